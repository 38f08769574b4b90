#include "fasp/degree.hpp"

#include <cctype>

#include "fasp/error.hpp"

namespace fasp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw RangeError("malformed fraction '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw RangeError("zero denominator in '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) || (whole.empty() && frac.empty()))
      throw RangeError("malformed decimal '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    q = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw RangeError("malformed number '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(body), 10));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string rational_text(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Degree::Degree(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0 || cmp(value_, 1) > 0) throw RangeError("truth degree " + rational_text(value_) + " outside [0,1]");
}

Degree::Degree(long numerator, long denominator) : Degree(Rational(numerator, denominator)) {}

Degree Degree::parse(std::string_view text) { return Degree(parse_rational(text)); }

Degree luk_and(const Degree& a, const Degree& b) {
  Rational t = a.value() + b.value() - 1;
  return sgn(t) > 0 ? Degree(t) : Degree::zero();
}

Degree luk_or(const Degree& a, const Degree& b) {
  Rational t = a.value() + b.value();
  return cmp(t, 1) < 0 ? Degree(t) : Degree::one();
}

Degree godel_and(const Degree& a, const Degree& b) { return a <= b ? a : b; }

Degree godel_or(const Degree& a, const Degree& b) { return a >= b ? a : b; }

Degree complement(const Degree& a) { return Degree(Rational(1 - a.value())); }

}  // namespace fasp
