/// @file rational.hpp
/// @brief Exact rationals (GMP) and the formal grid-spacing monomial Δx^a Δy^b.

#pragma once

#include <gmpxx.h>

#include <string>

namespace sps {

/// Arbitrary-precision rational, always kept in canonical (reduced, den > 0) form.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
double to_double(const Rational& r);

/// Exact text form: a terminating decimal when the denominator is 2^a 5^b,
/// otherwise "num/den".
std::string to_exact_string(const Rational& r);

/// Parses "p/q", an integer, or a terminating decimal into an exact rational.
Rational parse_rational(const std::string& text);

/// Formal monomial Δx^x Δy^y carried next to exact coefficients so that
/// identities hold for every spacing.
struct SpacingMonomial {
  int x = 0;
  int y = 0;

  double value(double dx, double dy) const;
  SpacingMonomial operator*(const SpacingMonomial& o) const { return {x + o.x, y + o.y}; }
  SpacingMonomial inverse() const { return {-x, -y}; }
  bool operator==(const SpacingMonomial&) const = default;
  std::string to_string() const;
};

}  // namespace sps
