#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace fasp {

using Rational = mpq_class;

/// Parses "3", "0.25", ".5" or "3/4" into an exact rational. No range check.
Rational parse_rational(std::string_view text);

/// Canonical text of a rational: "0", "1", "3/4", "-1/2".
std::string rational_text(const Rational& q);

/// Exact truth degree in [0,1].
class Degree {
 public:
  Degree() = default;

  /// Throws RangeError outside [0,1].
  explicit Degree(Rational value);
  Degree(long numerator, long denominator);

  static Degree zero() { return Degree{}; }
  static Degree one() { return Degree(1, 1); }
  static Degree parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return cmp(value_, 1) == 0; }
  std::string str() const { return rational_text(value_); }

  friend bool operator==(const Degree& a, const Degree& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

// Connectives over [0,1].
Degree luk_and(const Degree& a, const Degree& b);
Degree luk_or(const Degree& a, const Degree& b);
Degree godel_and(const Degree& a, const Degree& b);
Degree godel_or(const Degree& a, const Degree& b);
Degree complement(const Degree& a);

}  // namespace fasp
