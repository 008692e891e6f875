#pragma once

#include "kms/rational.hpp"

#include <map>
#include <vector>

namespace kms {

// Exponent vector; size equals the number of variables.
using Mono = std::vector<std::uint32_t>;

int mono_deg(const Mono& m);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b);  // a / b, requires b | a
Mono mono_lcm(const Mono& a, const Mono& b);

// Graded reverse lexicographic order: compare total degree first, ties broken
// by the last nonzero entry of a-b (negative means a greater).
bool grevlex_less(const Mono& a, const Mono& b);

struct GrevlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    return grevlex_less(b, a);
  }
};

// Sparse multivariate polynomial over Q. Terms are stored in descending
// grevlex order, so begin() is the leading term; zero coefficients are never
// stored.
class Poly {
 public:
  using TermMap = std::map<Mono, Rational, GrevlexGreater>;

  explicit Poly(int nvars = 0) : nv_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly var(int nvars, int i, std::uint32_t deg = 1);

  int nvars() const { return nv_; }
  bool is_zero() const { return t_.empty(); }
  const TermMap& terms() const { return t_; }

  void add_term(const Mono& m, const Rational& c);

  const Mono& leading_mono() const;
  const Rational& leading_coeff() const;

  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;

  Rational eval(const VecQ& x) const;
  GaussQ eval(const std::vector<GaussQ>& x) const;
  double eval_d(const std::vector<double>& x) const;

  // Replace variable i by a constant (the result still has nvars variables,
  // with exponent 0 in slot i).
  Poly substitute(int i, const Rational& c) const;

  bool operator==(const Poly&) const = default;

 private:
  int nv_;
  TermMap t_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly poly_scale(const Rational& c, const Poly& a);
Poly poly_pow(const Poly& a, unsigned e);
std::string poly_str(const Poly& p,
                     const std::vector<std::string>& var_names = {});

// |xi|^2 = sum of squares of all variables.
Poly norm_sq_poly(int nvars);

// --- exact interval arithmetic -------------------------------------------

struct IntervalQ {
  Rational lo, hi;
};
using IntervalBox = std::vector<IntervalQ>;

IntervalQ iv_add(const IntervalQ& a, const IntervalQ& b);
IntervalQ iv_mul(const IntervalQ& a, const IntervalQ& b);
IntervalQ iv_pow(const IntervalQ& a, std::uint32_t e);
IntervalQ iv_scale(const Rational& c, const IntervalQ& a);

// Monomial-wise enclosure: exact rational interval per term, then summed.
// Sound: the returned interval contains every value of p on the box.
IntervalQ interval_eval(const Poly& p, const IntervalBox& box);

// --- ideal computations ----------------------------------------------------

// Remainder of f under multivariate division by G (in the given order);
// deterministic: always reduces by the first divisor whose leading monomial
// divides the current leading monomial.
Poly normal_form(Poly f, const std::vector<Poly>& g);

// Reduced Groebner basis in grevlex order, monic, sorted by decreasing
// leading monomial. Unique for the ideal, hence byte-reproducible.
std::vector<Poly> buchberger(std::vector<Poly> gens);

// True iff the complex variety of the ideal generated by `gens` (homogeneous
// generators) contains no point other than the origin. Criterion: the
// leading-term ideal of a Groebner basis contains a pure power of every
// variable.
bool variety_only_origin(const std::vector<Poly>& gens, int nvars);

// Exact division a/b for polynomial matrices' fraction-free elimination;
// throws if the division is not exact.
Poly poly_div_exact(Poly a, const Poly& b);

// Determinant of an n x n polynomial matrix (row-major) by fraction-free
// Bareiss elimination with first-nonzero pivoting.
Poly poly_det(std::vector<Poly> m, int n);

// Rank of a rows x cols polynomial matrix over the rational function field,
// i.e. the maximal rank attained on any Zariski-dense set of points.
int poly_matrix_generic_rank(std::vector<Poly> m, int rows, int cols);

}  // namespace kms
