#include "fasp/parser.hpp"

#include <cctype>

#include "fasp/error.hpp"
#include "fasp/grounder.hpp"

namespace fasp {

bool SourceAtom::is_ground() const {
  for (const auto& t : args)
    if (t.variable) return false;
  return true;
}

std::string SourceAtom::ground_name() const {
  if (args.empty()) return predicate;
  std::string s = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i].text;
  }
  return s + ")";
}

namespace {

bool expr_has_variables(const SourceExpr& e) {
  if (e.kind == Expr::Kind::Atom) return !e.atom.is_ground();
  for (const auto& c : e.children)
    if (expr_has_variables(c)) return true;
  return false;
}

}  // namespace

bool SourceProgram::has_variables() const {
  for (const auto& r : statements) {
    for (const auto& item : r.head.items)
      if (const auto* a = std::get_if<SourceAtom>(&item); a && !a->is_ground()) return true;
    if (expr_has_variables(r.body)) return true;
  }
  return false;
}

namespace {

enum class Tok { Ident, Variable, Number, If, Dot, Comma, LParen, RParen, Star, Plus, OrOr, AndAnd, Not, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, const ParseOptions& opts) : text_(text), opts_(opts) {}

  Token next() {
    skip_space();
    Token t{Tok::End, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto two = [&](char second) { return pos_ + 1 < text_.size() && text_[pos_ + 1] == second; };
    if (c == ':' && two('-')) return take(t, Tok::If, 2);
    if (c == '|' && two('|')) return take(t, Tok::OrOr, 2);
    if (c == '&' && two('&')) return take(t, Tok::AndAnd, 2);
    switch (c) {
      case '.': return take(t, Tok::Dot, 1);
      case ',': return take(t, Tok::Comma, 1);
      case '(': return take(t, Tok::LParen, 1);
      case ')': return take(t, Tok::RParen, 1);
      case '*': return take(t, Tok::Star, 1);
      case '+': return take(t, Tok::Plus, 1);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(t);
    throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token take(Token t, Tok kind, std::size_t n) {
    t.kind = kind;
    t.text = std::string(text_.substr(pos_, n));
    for (std::size_t i = 0; i < n; ++i) advance();
    return t;
  }

  bool digit_at(std::size_t i) const { return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i])); }

  Token number(Token t) {
    std::size_t end = pos_;
    while (digit_at(end)) ++end;
    // A '.' only continues the number when a digit follows; "p :- 1." ends a rule.
    if (end < text_.size() && text_[end] == '.' && digit_at(end + 1)) {
      ++end;
      while (digit_at(end)) ++end;
    } else if (end < text_.size() && text_[end] == '/' && digit_at(end + 1)) {
      ++end;
      while (digit_at(end)) ++end;
    }
    return take(t, Tok::Number, end - pos_);
  }

  Token ident(Token t) {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    std::string word(text_.substr(pos_, end - pos_));
    if (word[0] == '_') {
      if (word.size() < 3 || word[1] != '_')
        throw ParseError(line_, column_, "identifiers may not start with '_' (anonymous variables are unsupported)");
      if (!opts_.allow_reserved) throw ParseError(line_, column_, "identifier '" + word + "' uses the reserved prefix '__'");
      return take(t, Tok::Ident, end - pos_);
    }
    if (word == "not") return take(t, Tok::Not, end - pos_);
    if (std::isupper(static_cast<unsigned char>(word[0]))) return take(t, Tok::Variable, end - pos_);
    return take(t, Tok::Ident, end - pos_);
  }

  std::string_view text_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::optional<Connective> binary_op(Tok t) {
  switch (t) {
    case Tok::Star: return Connective::LukAnd;
    case Tok::Plus: return Connective::LukOr;
    case Tok::OrOr: return Connective::GodelOr;
    case Tok::AndAnd:
    case Tok::Comma: return Connective::GodelAnd;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : lexer_(text, opts) { cur_ = lexer_.next(); }

  SourceProgram program() {
    SourceProgram sp;
    while (cur_.kind != Tok::End) sp.statements.push_back(rule(sp));
    return sp;
  }

 private:
  void shift() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, cur_.column, msg); }

  static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what + ", found " + describe(cur_));
    shift();
  }

  SourceRule rule(SourceProgram& sp) {
    SourceRule r;
    r.line = cur_.line;
    r.column = cur_.column;
    if (cur_.kind == Tok::If) {
      shift();
      r.head.items.emplace_back(Degree::zero());
      r.body = expr(sp);
      expect(Tok::Dot, "'.'");
      return r;
    }
    r.head = head(sp);
    if (cur_.kind == Tok::Dot) {
      shift();
      r.body.kind = Expr::Kind::Constant;
      r.body.value = Degree::one();
      return r;
    }
    expect(Tok::If, "':-' or '.'");
    r.body = expr(sp);
    expect(Tok::Dot, "'.'");
    return r;
  }

  SourceHead head(SourceProgram& sp) {
    SourceHead h;
    h.items.push_back(head_item(sp));
    while (auto op = head_op()) {
      if (h.connective && *h.connective != *op) fail("ambiguous connective mix in rule head");
      h.connective = op;
      shift();
      h.items.push_back(head_item(sp));
    }
    return h;
  }

  std::optional<Connective> head_op() const {
    if (cur_.kind == Tok::Comma) return std::nullopt;
    return binary_op(cur_.kind);
  }

  std::variant<SourceAtom, Degree> head_item(SourceProgram& sp) {
    if (cur_.kind == Tok::Number) return number();
    if (cur_.kind == Tok::Ident) return atom(sp);
    fail("expected atom or number in rule head, found " + describe(cur_));
  }

  SourceExpr expr(SourceProgram& sp) {
    SourceExpr left = term(sp);
    std::optional<Connective> level;
    while (auto op = binary_op(cur_.kind)) {
      if (level && *level != *op) fail("ambiguous connective mix; add parentheses");
      level = op;
      shift();
      SourceExpr right = term(sp);
      SourceExpr node;
      node.kind = Expr::Kind::Binary;
      node.connective = *op;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  SourceExpr term(SourceProgram& sp) {
    SourceExpr e;
    switch (cur_.kind) {
      case Tok::Not:
        shift();
        e.kind = Expr::Kind::Negation;
        e.children.push_back(term(sp));
        return e;
      case Tok::LParen: {
        shift();
        e = expr(sp);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Number:
        e.kind = Expr::Kind::Constant;
        e.value = number();
        return e;
      case Tok::Ident:
        e.kind = Expr::Kind::Atom;
        e.atom = atom(sp);
        return e;
      default: fail("expected expression, found " + describe(cur_));
    }
  }

  Degree number() {
    Token t = cur_;
    Rational q = parse_rational(t.text);
    if (sgn(q) < 0 || cmp(q, 1) > 0)
      throw RangeError("line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": truth constant " +
                       t.text + " outside [0,1]");
    shift();
    return Degree(q);
  }

  SourceAtom atom(SourceProgram& sp) {
    SourceAtom a;
    a.predicate = cur_.text;
    shift();
    if (cur_.kind != Tok::LParen) return a;
    shift();
    for (;;) {
      if (cur_.kind == Tok::Ident) {
        a.args.push_back(Term{cur_.text, false});
        sp.constants.insert(cur_.text);
      } else if (cur_.kind == Tok::Variable) {
        a.args.push_back(Term{cur_.text, true});
      } else if (cur_.kind == Tok::Number && cur_.text.find_first_of("./") == std::string::npos) {
        a.args.push_back(Term{cur_.text, false});
        sp.constants.insert(cur_.text);
      } else {
        fail("expected term, found " + describe(cur_));
      }
      shift();
      if (cur_.kind == Tok::Comma) {
        shift();
        continue;
      }
      expect(Tok::RParen, "',' or ')'");
      return a;
    }
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

SourceProgram parse(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).program(); }

Program parse_program(std::string_view text, const ParseOptions& opts) { return ground(parse(text, opts)); }

}  // namespace fasp
