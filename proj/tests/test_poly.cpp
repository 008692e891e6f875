#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kms/poly.hpp"

#include <vector>

using namespace kms;

namespace {

Poly X(int nv, int i, std::uint32_t d = 1) { return Poly::var(nv, i, d); }

Poly rnd_poly(SplitMix64& rng, int nv, int max_deg, int nterms) {
  Poly p(nv);
  for (int t = 0; t < nterms; ++t) {
    Mono m(nv, 0);
    int deg = static_cast<int>(rng.next() % (max_deg + 1));
    for (int d = 0; d < deg; ++d) m[rng.next() % nv] += 1;
    int num = static_cast<int>(rng.next() % 11) - 5;
    Rational c(num, static_cast<int>(rng.next() % 4) + 1);
    c.canonicalize();  // mpq_class(num, den) does not reduce on its own
    p.add_term(m, c);
  }
  return p;
}

}  // namespace

TEST_CASE("grevlex order") {
  // Degree dominates; ties are broken so that the variable with the highest
  // index is "cheapest": x0^2 > x0 x1 > x1^2 and x1^2 > x0 x2.
  Mono x0x0{2, 0}, x0x1{1, 1}, x1x1{0, 2};
  CHECK(grevlex_less(x0x1, x0x0));
  CHECK(grevlex_less(x1x1, x0x1));
  CHECK(grevlex_less(Mono{1, 0}, x1x1));  // lower degree is smaller
  Mono a{1, 0, 1}, b{0, 2, 0};
  CHECK(grevlex_less(a, b));  // x0 x2 < x1^2 in grevlex
  CHECK(!grevlex_less(a, a));
}

TEST_CASE("polynomial arithmetic") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  Poly sq = poly_pow(x + y, 2);
  Poly expect = x * x + poly_scale(Rational(2), x * y) + y * y;
  CHECK(sq == expect);
  CHECK((x - y) * (x + y) == x * x - y * y);
  CHECK((sq - sq).is_zero());
  CHECK(sq.total_degree() == 2);
  CHECK(sq.is_homogeneous());
  CHECK(!(sq + x).is_homogeneous());
  CHECK(Poly(nv).total_degree() == -1);
  CHECK(sq.leading_mono() == Mono{2, 0});
  CHECK(poly_str(x * x - y, {"x", "y"}) == "x^2 - y");
  CHECK(poly_str(poly_scale(Rational(1, 2), x)) == "1/2*x0");

  // Evaluation is exact.
  CHECK(sq.eval(VecQ{Rational(1, 3), Rational(1, 6)}) == Rational(1, 4));
  // Complex evaluation: (x+y)^2 at (1, i) = 2i.
  GaussQ i01(Rational(0), Rational(1));
  GaussQ v = sq.eval(std::vector<GaussQ>{GaussQ(Rational(1)), i01});
  CHECK(v == GaussQ(Rational(0), Rational(2)));

  CHECK(sq.substitute(1, Rational(0)) == x * x);
  CHECK(norm_sq_poly(2) == x * x + y * y);
}

TEST_CASE("interval arithmetic soundness") {
  // Even powers of a zero-containing interval start at zero.
  IntervalQ m{Rational(-1), Rational(2)};
  IntervalQ p2 = iv_pow(m, 2);
  CHECK(p2.lo == 0);
  CHECK(p2.hi == 4);

  SplitMix64 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    int nv = 2 + static_cast<int>(rng.next() % 2);
    Poly p = rnd_poly(rng, nv, 3, 4);
    IntervalBox box(nv);
    VecQ sample(nv);
    for (int i = 0; i < nv; ++i) {
      Rational a(static_cast<int>(rng.next() % 9) - 4,
                 static_cast<int>(rng.next() % 3) + 1);
      Rational w(static_cast<int>(rng.next() % 4) + 1, 2);
      box[i] = IntervalQ{a, a + w};
      // Sample point inside the box: a + w * t with t in [0,1].
      Rational t(static_cast<int>(rng.next() % 5), 4);
      sample[i] = a + w * t;
    }
    IntervalQ enc = interval_eval(p, box);
    Rational val = p.eval(sample);
    CHECK(enc.lo <= val);
    CHECK(val <= enc.hi);
  }
}

TEST_CASE("normal form") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  std::vector<Poly> g{x * x, y};
  CHECK(normal_form(x * x * y, g).is_zero());
  CHECK(normal_form(x * x + y, g).is_zero());
  CHECK(normal_form(x + y, g) == x);
}

TEST_CASE("groebner basis is canonical and decides membership") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  std::vector<Poly> gens{x * x - y * y, x * y};
  auto gb = buchberger(gens);

  // Reduced basis is unique: scaling and permuting generators cannot change it.
  std::vector<Poly> gens2{poly_scale(Rational(-3, 2), x * y),
                          poly_scale(Rational(2), x * x - y * y)};
  CHECK(buchberger(gens2) == gb);

  // Anything built from the generators reduces to zero.
  SplitMix64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    Poly f = rnd_poly(rng, nv, 2, 3) * gens[0] + rnd_poly(rng, nv, 2, 3) * gens[1];
    CHECK(normal_form(f, gb).is_zero());
  }
  // 1 is not in a homogeneous proper ideal; x is not in this one either.
  CHECK(!normal_form(Poly::constant(nv, Rational(1)), gb).is_zero());
  CHECK(!normal_form(x, gb).is_zero());
  // y^3 = y*(x^2-y^2) - x*(xy) up to sign lies in the ideal.
  CHECK(normal_form(y * y * y, gb).is_zero());
}

TEST_CASE("variety only origin") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  CHECK(variety_only_origin({x * x, y * y}, nv));
  CHECK(!variety_only_origin({x * y}, nv));
  // x^2 + y^2 vanishes at (1, i): real-only reasoning would get this wrong.
  CHECK(!variety_only_origin({x * x + y * y}, nv));
  CHECK(variety_only_origin({x * x + y * y, x * y}, nv));
  CHECK_THROWS(variety_only_origin({x + Poly::constant(nv, Rational(1))}, nv));
}

TEST_CASE("polynomial determinant") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  CHECK(poly_det({x, y, y, x}, 2) == x * x - y * y);
  // Singular symbolic matrix.
  CHECK(poly_det({x, y, x, y}, 2).is_zero());

  // 3x3 against the cofactor expansion done by hand:
  // det [[x,y,0],[y,x,y],[0,y,x]] = x^3 - 2 x y^2.
  Poly z0(nv);
  Poly d = poly_det({x, y, z0, y, x, y, z0, y, x}, 3);
  CHECK(d == x * x * x - poly_scale(Rational(2), x * y * y));
}

TEST_CASE("generic rank of polynomial matrices") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1), z0(nv);
  CHECK(poly_matrix_generic_rank({x, y, poly_scale(Rational(2), x),
                                  poly_scale(Rational(2), y)},
                                 2, 2) == 1);
  CHECK(poly_matrix_generic_rank({x, z0, z0, y}, 2, 2) == 2);
  CHECK(poly_matrix_generic_rank({z0, z0, z0, z0}, 2, 2) == 0);
  // Rank can exceed what any single real point shows only on a null set;
  // generic rank of [[x, y]] is 1.
  CHECK(poly_matrix_generic_rank({x, y}, 1, 2) == 1);
}

TEST_CASE("exact polynomial division") {
  int nv = 2;
  Poly x = X(nv, 0), y = X(nv, 1);
  Poly prod = (x + y) * (x - y);
  CHECK(poly_div_exact(prod, x + y) == x - y);
  CHECK_THROWS(poly_div_exact(x * x + y, x + y));
}
