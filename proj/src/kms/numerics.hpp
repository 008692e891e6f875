#pragma once

#include "kms/operator_model.hpp"

#include <cstdint>
#include <vector>

namespace kms {

// Uniform cell-centered grid on the cube [-L, L]^n: x_i = -L + (i + 1/2) h,
// h = 2L/N. N even keeps cells away from the origin.
struct Grid {
  int n = 3;
  int N = 0;
  double L = 0;

  double h() const { return 2.0 * L / N; }
  double coord(int i) const { return -L + (i + 0.5) * h(); }
  long cells() const {
    long c = 1;
    for (int i = 0; i < n; ++i) c *= N;
    return c;
  }
};

// Sampled field with `comps` components per cell, cell-major storage.
struct GridField {
  Grid g;
  int comps = 0;
  std::vector<double> v;

  GridField() = default;
  GridField(const Grid& grid, int c)
      : g(grid), comps(c), v(static_cast<std::size_t>(grid.cells()) * c) {}

  double& at(long cell, int c) {
    return v[static_cast<std::size_t>(cell) * comps + c];
  }
  double at(long cell, int c) const {
    return v[static_cast<std::size_t>(cell) * comps + c];
  }
};

// Pointwise application of a part map (comps must equal a.domain.dim).
GridField apply_partmap_field(const PartMap& a, const GridField& f);

// Sum_alpha B_alpha D^alpha f with D^alpha realized by iterated second-order
// central differences (which commute exactly). Requires f to vanish on a
// boundary band at least `b.order` cells wide; throws otherwise.
GridField apply_operator_field(const HomOperator& b, const GridField& f);

// All first central differences: comps -> comps * n, derivative axis fastest.
GridField gradient_field(const GridField& f);

// ( sum_cells |f(cell)|_F^p h^n )^(1/p) with a fixed summation order.
double lp_norm(const GridField& f, double p);

// L^q norm of the m-th iterated gradient (m = 0: plain L^q norm).
double sobolev_seminorm(const GridField& f, int m, double q);

// ratio = |D^{k-1} P|_q / ( |D^{k-1} A[P]|_q + |B P|_1 ), k = b.order.
// Throws on a zero denominator.
double kms_ratio(const PartMap& a, const HomOperator& b, const GridField& p,
                 double q);

// --- counterexample family ---------------------------------------------------
//
// phi = eta_R(r) * Phi_eps(r) with Phi_eps = (1/4pi) (r^2 + eps^2)^(-1/2)
// (mollified fundamental solution of -Laplace) and eta_R a C^3 polynomial
// cutoff that is 1 on [0, R/2] and 0 beyond R with three vanishing
// derivatives at both ends. P_phi = Anti(grad phi) is skew-symmetric with
// sym P_phi = 0 exactly.
struct RadialPhi {
  double eps = 0, R = 0;

  double eta(double r) const;
  double deta(double r) const;
  double ddeta(double r) const;
  double dphi(double r) const;  // radial derivative of phi
  double lap(double r) const;   // Laplacian of phi
};

// P_phi sampled on the grid (9 components, row-major 3x3).
GridField counterexample_family(const Grid& g, double eps, double R);

// Analytic value of (skew + tr . id)[Curl] P_phi under the catalog's Curl
// convention: -2 lap(phi) times the identity matrix.
GridField counterexample_rhs_analytic(const Grid& g, double eps, double R);

// Continuum norms of the family by adaptive radial quadrature:
// lhs = |P_phi|_{3/2}, rhs_b = |(skew+tr)[Curl] P_phi|_1.
double continuum_lhs(double eps, double R);
double continuum_rhs_b(double eps, double R);

// --- experiments --------------------------------------------------------------

struct BlowupConfig {
  double R = 1.0;
  std::vector<double> ratios = {1e2, 1e3, 1e4, 1e5};  // R / eps schedule
  int N = 96;
  double L_over_R = 4.0;
  // Resolvable-instance stencil convergence measurement (order-2 check).
  int stencil_N = 64;
};

struct BlowupRow {
  double eps = 0, R = 0;
  int N = 0;
  double lhs = 0, rhs_part = 0, rhs_b = 0, ratio = 0;
  double cont_lhs = 0, cont_rhs_b = 0, cont_ratio = 0;
};

struct StencilReport {
  int n_coarse = 0, n_fine = 0;
  double err_coarse = 0, err_fine = 0;
  double order = 0;
};

struct TrendFit {
  double growth_total = 0;        // ratio_last / ratio_first
  double growth_per_decade = 0;   // geometric average per decade of R/eps
  double cube_fit_coeff = 0;      // least squares a for cube ~ a log(R/eps)
  double cube_max_factor = 0;     // max_i max(cube_i/(a log_i), a log_i/cube_i)
  bool strictly_increasing = false;
};

struct BlowupResult {
  BlowupConfig cfg;
  std::vector<BlowupRow> rows;
  double sym_abs_max = 0;  // max |sym P_phi| over all rows (exactly 0)
  StencilReport stencil;
  TrendFit grid_trend, continuum_trend;
};

BlowupResult blowup_experiment(const BlowupConfig& cfg);

TrendFit fit_trend(const std::vector<double>& log_ratios,
                   const std::vector<double>& kms_ratios);

// Deterministic smooth compactly supported field: windowed random cosine
// superposition, vanishing outside |x_i| <= 0.8 L.
GridField random_bump_field(const Grid& g, int comps, std::uint64_t seed);

}  // namespace kms
