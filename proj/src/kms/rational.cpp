#include "kms/rational.hpp"

#include <stdexcept>

namespace kms {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  // Pre-validate: optional sign, digits, optionally "/" and digits.
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j;
  };
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t e = digits(i);
  if (e == i) throw std::invalid_argument("bad rational literal: " + s);
  if (e < s.size()) {
    if (s[e] != '/') throw std::invalid_argument("bad rational literal: " + s);
    std::size_t d0 = e + 1;
    std::size_t d1 = digits(d0);
    if (d1 == d0 || d1 != s.size())
      throw std::invalid_argument("bad rational literal: " + s);
  }
  // mpq_set_str rejects a leading '+', so strip it after validation.
  Rational x(s[0] == '+' ? s.substr(1) : s);
  if (x.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  x.canonicalize();
  return x;
}

std::string rat_str(const Rational& x) { return x.get_str(); }

Rational rat_pow(const Rational& x, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  // num/den already coprime, so powers are too; no canonicalize needed.
  return r;
}

double rat_double(const Rational& x) { return x.get_d(); }

GaussQ operator+(const GaussQ& a, const GaussQ& b) {
  return {a.re + b.re, a.im + b.im};
}

GaussQ operator-(const GaussQ& a, const GaussQ& b) {
  return {a.re - b.re, a.im - b.im};
}

GaussQ operator*(const GaussQ& a, const GaussQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussQ gauss_inv(const GaussQ& a) {
  Rational n = a.re * a.re + a.im * a.im;
  if (n == 0) throw std::domain_error("division by zero in Q(i)");
  return {a.re / n, -a.im / n};
}

std::string gauss_str(const GaussQ& a) {
  return rat_str(a.re) + (sgn(a.im) < 0 ? "" : "+") + rat_str(a.im) + "i";
}

}  // namespace kms
