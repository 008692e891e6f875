#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace kms {

// Exact rational scalar. mpq_class keeps results canonical (gcd(num,den)=1,
// den>0) through arithmetic; parsing canonicalizes explicitly.
using Rational = mpq_class;
using VecQ = std::vector<Rational>;

// Accepts "p" or "p/q" with optional sign; rejects everything else.
Rational rat_parse(const std::string& s);

// Canonical form: "p" when den==1, else "p/q" with q>0.
std::string rat_str(const Rational& x);

Rational rat_pow(const Rational& x, unsigned long e);
double rat_double(const Rational& x);

// Element of Q(i). Enough arithmetic for exact complex rank computations.
struct GaussQ {
  Rational re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(Rational r) : re(std::move(r)), im(0) {}
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussQ&) const = default;
};

GaussQ operator+(const GaussQ& a, const GaussQ& b);
GaussQ operator-(const GaussQ& a, const GaussQ& b);
GaussQ operator*(const GaussQ& a, const GaussQ& b);
GaussQ gauss_inv(const GaussQ& a);
std::string gauss_str(const GaussQ& a);

// Deterministic 64-bit stream; identical across platforms for a given seed.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace kms
