#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kms/dsl.hpp"
#include "kms/numerics.hpp"

#include <cmath>

using namespace kms;

namespace {

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("grid geometry") {
  Grid g{3, 8, 2.0};
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.coord(0) == doctest::Approx(-1.75));
  CHECK(g.coord(7) == doctest::Approx(1.75));
  CHECK(g.cells() == 512);
}

TEST_CASE("lp norm of a constant field") {
  Grid g{3, 16, 1.5};
  GridField f(g, 2);
  for (long c = 0; c < g.cells(); ++c) {
    f.at(c, 0) = 3.0;
    f.at(c, 1) = 4.0;  // Frobenius magnitude 5 everywhere
  }
  double vol = std::pow(2 * g.L, 3);
  CHECK(rel_diff(lp_norm(f, 1.0), 5.0 * vol) < 1e-12);
  CHECK(rel_diff(lp_norm(f, 2.0), 5.0 * std::sqrt(vol)) < 1e-12);
  CHECK(rel_diff(lp_norm(f, 1.5), 5.0 * std::pow(vol, 2.0 / 3.0)) < 1e-12);
  CHECK_THROWS(lp_norm(f, 0.5));
}

TEST_CASE("operator application is linear") {
  Grid g{3, 24, 1.0};
  auto b = parse_operator("skewtr(curl)", 3);
  GridField f1 = random_bump_field(g, 9, 5);
  GridField f2 = random_bump_field(g, 9, 6);
  GridField sum(g, 9);
  for (long c = 0; c < g.cells(); ++c)
    for (int k = 0; k < 9; ++k)
      sum.at(c, k) = 2.0 * f1.at(c, k) - 0.5 * f2.at(c, k);

  GridField b1 = apply_operator_field(b, f1);
  GridField b2 = apply_operator_field(b, f2);
  GridField bs = apply_operator_field(b, sum);
  double max_err = 0, max_mag = 0;
  for (long c = 0; c < g.cells(); ++c)
    for (int k = 0; k < 9; ++k) {
      double want = 2.0 * b1.at(c, k) - 0.5 * b2.at(c, k);
      max_err = std::max(max_err, std::abs(bs.at(c, k) - want));
      max_mag = std::max(max_mag, std::abs(want));
    }
  CHECK(max_err <= 1e-12 * std::max(1.0, max_mag));
}

TEST_CASE("margin violations are rejected") {
  Grid g{3, 8, 1.0};
  GridField f(g, 9);
  for (long c = 0; c < g.cells(); ++c) f.at(c, 0) = 1.0;  // touches boundary
  CHECK_THROWS(apply_operator_field(curl_op(3), f));
}

TEST_CASE("random bump fields are reproducible and compactly supported") {
  Grid g{3, 20, 1.0};
  GridField a = random_bump_field(g, 3, 42);
  GridField b = random_bump_field(g, 3, 42);
  CHECK(a.v == b.v);
  GridField c = random_bump_field(g, 3, 43);
  CHECK(a.v != c.v);

  double margin_max = 0, inner_max = 0;
  for (long cell = 0; cell < g.cells(); ++cell) {
    long rest = cell;
    bool outside = false;
    for (int d = 0; d < 3; ++d) {
      int idx = static_cast<int>(rest % g.N);
      rest /= g.N;
      if (std::abs(g.coord(idx)) >= 0.8 * g.L) outside = true;
    }
    for (int k = 0; k < 3; ++k) {
      double val = std::abs(a.at(cell, k));
      (outside ? margin_max : inner_max) = std::max(
          outside ? margin_max : inner_max, val);
    }
  }
  CHECK(margin_max == 0.0);
  CHECK(inner_max > 0.0);
}

TEST_CASE("identity part map bounds the ratio by one") {
  Grid g{3, 24, 1.0};
  GridField p = random_bump_field(g, 9, 9);
  double r = kms_ratio(part_map("id", 3), parse_operator("skewtr(curl)", 3),
                       p, 1.5);
  CHECK(r > 0);
  CHECK(r <= 1.0 + 1e-12);
}

TEST_CASE("counterexample family is exactly skew") {
  Grid g{3, 32, 2.0};
  GridField p = counterexample_family(g, 0.25, 1.0);
  REQUIRE(p.comps == 9);
  double sym_max = 0, mag = 0;
  for (long c = 0; c < g.cells(); ++c) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.5 * (p.at(c, 3 * i + j) + p.at(c, 3 * j + i));
        sym_max = std::max(sym_max, std::abs(s));
        mag = std::max(mag, std::abs(p.at(c, 3 * i + j)));
      }
  }
  CHECK(sym_max == 0.0);  // bitwise skew symmetry, not approximate
  CHECK(mag > 0.0);
}

TEST_CASE("discrete operator matches the analytic right-hand side") {
  // At a well-resolved mollification width the second-order stencil applied
  // to P_phi reproduces -2 lap(phi) I with a small relative L2 error.
  double R = 1.0, eps = 0.5;
  Grid g{3, 48, 1.25};
  GridField p = counterexample_family(g, eps, R);
  GridField num = apply_operator_field(parse_operator("skewtr(curl)", 3), p);
  GridField ana = counterexample_rhs_analytic(g, eps, R);
  double err2 = 0, ref2 = 0;
  for (long c = 0; c < g.cells(); ++c)
    for (int k = 0; k < 9; ++k) {
      double d = num.at(c, k) - ana.at(c, k);
      err2 += d * d;
      ref2 += ana.at(c, k) * ana.at(c, k);
    }
  CHECK(std::sqrt(err2 / ref2) < 0.07);

  // The analytic right-hand side is diagonal: -2 lap phi times the identity.
  for (long c = 0; c < std::min<long>(g.cells(), 200); ++c) {
    CHECK(ana.at(c, 1) == 0.0);
    CHECK(ana.at(c, 0) == ana.at(c, 4));
    CHECK(ana.at(c, 0) == ana.at(c, 8));
  }
}

TEST_CASE("grid norms agree with radial quadrature when resolved") {
  double R = 1.0, eps = 0.25;
  Grid g{3, 96, 2.0};
  GridField p = counterexample_family(g, eps, R);
  double lhs_grid = sobolev_seminorm(p, 0, 1.5);
  double lhs_cont = continuum_lhs(eps, R);
  CHECK(rel_diff(lhs_grid, lhs_cont) < 0.05);

  GridField bp = apply_operator_field(parse_operator("skewtr(curl)", 3), p);
  double rhs_grid = lp_norm(bp, 1.0);
  double rhs_cont = continuum_rhs_b(eps, R);
  CHECK(rel_diff(rhs_grid, rhs_cont) < 0.05);
}

TEST_CASE("trend fit on synthetic data") {
  // Ratios whose cube is exactly 2 log(R/eps): perfect fit, factor 1.
  std::vector<double> logs{std::log(1e2), std::log(1e3), std::log(1e4)};
  std::vector<double> ratios;
  for (double l : logs) ratios.push_back(std::cbrt(2.0 * l));
  TrendFit t = fit_trend(logs, ratios);
  CHECK(t.strictly_increasing);
  CHECK(t.cube_fit_coeff == doctest::Approx(2.0));
  CHECK(t.cube_max_factor == doctest::Approx(1.0));
  CHECK(t.growth_total == doctest::Approx(std::cbrt(logs.back() / logs.front())));
  // Per-decade average over two decades.
  CHECK(t.growth_per_decade ==
        doctest::Approx(std::pow(t.growth_total, 0.5)));

  std::vector<double> flat{1.0, 1.0, 1.0};
  CHECK(!fit_trend(logs, flat).strictly_increasing);
}

TEST_CASE("blow-up experiment") {
  BlowupConfig cfg;  // defaults: R=1, N=96, L=4R, four decades of R/eps
  BlowupResult res = blowup_experiment(cfg);
  REQUIRE(res.rows.size() == 4);

  // The family stays exactly skew on every grid.
  CHECK(res.sym_abs_max == 0.0);

  // The discretization of B P_phi converges at second order.
  CHECK(res.stencil.order > 1.7);
  CHECK(res.stencil.order < 2.3);
  CHECK(res.stencil.err_fine < res.stencil.err_coarse);

  // Ratios grow monotonically along the eps schedule on the grid and in the
  // continuum, and the continuum left-hand side follows the logarithmic law:
  // growth within a factor 2 of (log_last/log_first)^(2/3).
  CHECK(res.grid_trend.strictly_increasing);
  CHECK(res.continuum_trend.strictly_increasing);
  double target = std::pow(
      std::log(cfg.ratios.back()) / std::log(cfg.ratios.front()), 2.0 / 3.0);
  double got = res.continuum_trend.growth_total;
  CHECK(std::max(got / target, target / got) < 2.0);

  // Denominators stay bounded while the numerator diverges: the part-map
  // term vanishes identically and the operator term stays O(1).
  for (const auto& row : res.rows) {
    CHECK(row.rhs_part == 0.0);
    CHECK(row.rhs_b > 0);
    CHECK(row.cont_rhs_b < 1.5 * res.rows.front().cont_rhs_b);
  }
  // Cube-vs-log proportionality within a factor 2 in the continuum.
  CHECK(res.continuum_trend.cube_max_factor < 2.0);
}
