#include "fasp/printer.hpp"

namespace fasp {

namespace {

void print_into(const Expr& e, std::string& out);

void print_operand(const Expr& e, std::string& out, bool parenthesize) {
  if (parenthesize) out += '(';
  print_into(e, out);
  if (parenthesize) out += ')';
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Constant: out += e.value().str(); return;
    case Expr::Kind::Atom: out += e.atom().name(); return;
    case Expr::Kind::Negation:
      out += "not ";
      print_operand(e.operand(), out, e.operand().is_binary());
      return;
    case Expr::Kind::Binary: {
      const Expr& l = e.left();
      const Expr& r = e.right();
      // Chains parse left-associatively, so only a same-connective left child may go bare.
      print_operand(l, out, l.is_binary() && l.connective() != e.connective());
      out += ' ';
      out += connective_symbol(e.connective());
      out += ' ';
      print_operand(r, out, r.is_binary());
      return;
    }
  }
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::string print(const HeadExpr& h) {
  std::string out;
  for (std::size_t i = 0; i < h.items().size(); ++i) {
    if (i) {
      out += ' ';
      out += connective_symbol(*h.connective());
      out += ' ';
    }
    const auto& item = h.items()[i];
    if (const auto* a = std::get_if<Atom>(&item))
      out += a->name();
    else
      out += std::get<Degree>(item).str();
  }
  return out;
}

std::string print(const Rule& r) {
  if (r.head.is_constant() && r.head.constant_value().is_zero()) return ":- " + print(r.body) + ".";
  if (r.body.is_constant() && r.body.value().is_one()) return print(r.head) + ".";
  return print(r.head) + " :- " + print(r.body) + ".";
}

std::string print(const Program& p) {
  std::string out;
  for (const auto& r : p.rules()) {
    out += print(r);
    out += '\n';
  }
  return out;
}

}  // namespace fasp
