#include "knotpi/rational.hpp"

#include <stdexcept>

namespace knotpi {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational: " + std::string(text));
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class dd(std::string(den), 10);
  if (dd == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(mpq_class(n, dd));
}

std::string Rational::to_string() const { return numerator() + "/" + denominator(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace knotpi
