#include "sps/rational.hpp"

#include <cmath>
#include <sstream>

#include "sps/grid_fields.hpp"

namespace sps {

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_exact_string(const Rational& r) {
  mpz_class den = r.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return r.get_str();
  if (r.get_den() == 1) return r.get_num().get_str();
  // Scale to an integer over 10^digits.
  const int digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = r.get_num() * scale / r.get_den();
  const bool negative = scaled < 0;
  std::string body = (negative ? mpz_class(-scaled) : scaled).get_str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (negative ? "-" : "") + body;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10));
    if (r.get_den() == 0) throw Error("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(text, 10));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const auto frac_len = text.size() - dot - 1;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational r(mpz_class(digits, 10), den);
  r.canonicalize();
  return r;
}

double SpacingMonomial::value(double dx, double dy) const {
  return std::pow(dx, x) * std::pow(dy, y);
}

std::string SpacingMonomial::to_string() const {
  std::ostringstream os;
  bool any = false;
  if (x != 0) { os << "dx^" << x; any = true; }
  if (y != 0) { os << (any ? " " : "") << "dy^" << y; any = true; }
  return any ? os.str() : "1";
}

}  // namespace sps
