#include "kms/numerics.hpp"

#include "kms/dsl.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace kms {

namespace {

long axis_stride(const Grid& g, int axis) {
  long s = 1;
  for (int i = axis + 1; i < g.n; ++i) s *= g.N;
  return s;
}

int axis_index(const Grid& g, long cell, int axis) {
  return static_cast<int>((cell / axis_stride(g, axis)) % g.N);
}

std::vector<double> matq_to_doubles(const MatQ& m) {
  std::vector<double> d(m.a.size());
  for (std::size_t i = 0; i < m.a.size(); ++i) d[i] = rat_double(m.a[i]);
  return d;
}

// First central difference along one axis; out-of-range neighbors read 0,
// which is exact for fields with a zero margin band.
GridField central_diff(const GridField& f, int axis) {
  GridField out(f.g, f.comps);
  const long stride = axis_stride(f.g, axis);
  const int N = f.g.N;
  const double inv2h = 1.0 / (2.0 * f.g.h());
  const long cells = f.g.cells();
  for (long cell = 0; cell < cells; ++cell) {
    int idx = axis_index(f.g, cell, axis);
    for (int c = 0; c < f.comps; ++c) {
      double up = idx + 1 < N ? f.at(cell + stride, c) : 0.0;
      double dn = idx > 0 ? f.at(cell - stride, c) : 0.0;
      out.at(cell, c) = (up - dn) * inv2h;
    }
  }
  return out;
}

void check_margin(const GridField& f, int width) {
  const long cells = f.g.cells();
  for (long cell = 0; cell < cells; ++cell) {
    bool margin = false;
    for (int a = 0; a < f.g.n && !margin; ++a) {
      int idx = axis_index(f.g, cell, a);
      margin = idx < width || idx >= f.g.N - width;
    }
    if (!margin) continue;
    for (int c = 0; c < f.comps; ++c)
      if (f.at(cell, c) != 0.0)
        throw std::invalid_argument(
            "field violates the compact-support margin");
  }
}

double frob_sq(const GridField& f, long cell) {
  double s = 0;
  for (int c = 0; c < f.comps; ++c) {
    double x = f.at(cell, c);
    s += x * x;
  }
  return s;
}

}  // namespace

GridField apply_partmap_field(const PartMap& a, const GridField& f) {
  if (a.domain.dim != f.comps)
    throw std::invalid_argument("part map domain does not match field");
  std::vector<double> m = matq_to_doubles(a.m);
  GridField out(f.g, a.codomain.dim);
  const long cells = f.g.cells();
  for (long cell = 0; cell < cells; ++cell)
    for (int r = 0; r < a.codomain.dim; ++r) {
      double s = 0;
      for (int c = 0; c < f.comps; ++c)
        s += m[static_cast<std::size_t>(r) * f.comps + c] * f.at(cell, c);
      out.at(cell, r) = s;
    }
  return out;
}

GridField apply_operator_field(const HomOperator& b, const GridField& f) {
  if (b.domain.dim != f.comps)
    throw std::invalid_argument("operator domain does not match field");
  if (b.dim_n != f.g.n)
    throw std::invalid_argument("operator dimension does not match grid");
  check_margin(f, b.order);
  GridField out(f.g, b.codomain.dim);
  const long cells = f.g.cells();
  for (const auto& [alpha, mat] : b.coeff) {
    GridField d = f;
    for (int axis = 0; axis < b.dim_n; ++axis)
      for (std::uint32_t t = 0; t < alpha[axis]; ++t)
        d = central_diff(d, axis);
    std::vector<double> m = matq_to_doubles(mat);
    for (long cell = 0; cell < cells; ++cell)
      for (int r = 0; r < b.codomain.dim; ++r) {
        double s = 0;
        for (int c = 0; c < f.comps; ++c)
          s += m[static_cast<std::size_t>(r) * f.comps + c] * d.at(cell, c);
        out.at(cell, r) += s;
      }
  }
  return out;
}

GridField gradient_field(const GridField& f) {
  GridField out(f.g, f.comps * f.g.n);
  for (int axis = 0; axis < f.g.n; ++axis) {
    GridField d = central_diff(f, axis);
    const long cells = f.g.cells();
    for (long cell = 0; cell < cells; ++cell)
      for (int c = 0; c < f.comps; ++c)
        out.at(cell, c * f.g.n + axis) = d.at(cell, c);
  }
  return out;
}

double lp_norm(const GridField& f, double p) {
  if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0;
  const long cells = f.g.cells();
  for (long cell = 0; cell < cells; ++cell)
    s += std::pow(frob_sq(f, cell), p / 2.0);
  double h = f.g.h();
  return std::pow(s, 1.0 / p) * std::pow(h, f.g.n / p);
}

double sobolev_seminorm(const GridField& f, int m, double q) {
  if (m == 0) return lp_norm(f, q);
  GridField d = f;
  for (int t = 0; t < m; ++t) d = gradient_field(d);
  return lp_norm(d, q);
}

double kms_ratio(const PartMap& a, const HomOperator& b, const GridField& p,
                 double q) {
  int k = b.order;
  double num = sobolev_seminorm(p, k - 1, q);
  double den = sobolev_seminorm(apply_partmap_field(a, p), k - 1, q) +
               lp_norm(apply_operator_field(b, p), 1.0);
  if (den == 0) throw std::domain_error("kms_ratio: zero denominator");
  return num / den;
}

// --- counterexample family ----------------------------------------------------

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Seventh-order smoothstep on [0,1] with three vanishing derivatives at both
// ends (C^3), so second differences of the cutoff stay O(h^2)-accurate.
double smoothstep(double t) {
  return t * t * t * t * (35 + t * (-84 + t * (70 - 20 * t)));
}
double dsmoothstep(double t) {
  double u = t * (1 - t);
  return 140 * u * u * u;
}
double ddsmoothstep(double t) {
  double u = t * (1 - t);
  return 420 * u * u * (1 - 2 * t);
}
}  // namespace

double RadialPhi::eta(double r) const {
  if (r <= R / 2) return 1;
  if (r >= R) return 0;
  return 1 - smoothstep((2 * r - R) / R);
}

double RadialPhi::deta(double r) const {
  if (r <= R / 2 || r >= R) return 0;
  return -dsmoothstep((2 * r - R) / R) * 2 / R;
}

double RadialPhi::ddeta(double r) const {
  if (r <= R / 2 || r >= R) return 0;
  return -ddsmoothstep((2 * r - R) / R) * 4 / (R * R);
}

double RadialPhi::dphi(double r) const {
  if (r >= R) return 0;
  double u = r * r + eps * eps;
  double phi = 1.0 / (4 * kPi * std::sqrt(u));
  double dphi0 = -r / (4 * kPi * u * std::sqrt(u));
  return deta(r) * phi + eta(r) * dphi0;
}

double RadialPhi::lap(double r) const {
  if (r >= R) return 0;
  double u = r * r + eps * eps;
  double su = std::sqrt(u);
  double phi = 1.0 / (4 * kPi * su);
  double dphi0 = -r / (4 * kPi * u * su);
  double lap0 = -3 * eps * eps / (4 * kPi * u * u * su);
  double curv = r > 0 ? ddeta(r) + 2 * deta(r) / r : 0.0;
  return eta(r) * lap0 + 2 * deta(r) * dphi0 + curv * phi;
}

GridField counterexample_family(const Grid& g, double eps, double R) {
  if (g.n != 3) throw std::invalid_argument("family is three-dimensional");
  RadialPhi p{eps, R};
  GridField out(g, 9);
  const int N = g.N;
  long cell = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k, ++cell) {
        double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        double r = std::sqrt(x * x + y * y + z * z);
        if (r >= R) continue;
        double s = p.dphi(r) / r;
        double g0 = s * x, g1 = s * y, g2 = s * z;
        // Anti(grad phi): exact negations keep sym P identically zero.
        out.at(cell, 1) = -g2;
        out.at(cell, 2) = g1;
        out.at(cell, 3) = g2;
        out.at(cell, 5) = -g0;
        out.at(cell, 6) = -g1;
        out.at(cell, 7) = g0;
      }
  return out;
}

GridField counterexample_rhs_analytic(const Grid& g, double eps, double R) {
  if (g.n != 3) throw std::invalid_argument("family is three-dimensional");
  RadialPhi p{eps, R};
  GridField out(g, 9);
  const int N = g.N;
  long cell = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k, ++cell) {
        double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        double r = std::sqrt(x * x + y * y + z * z);
        if (r >= R) continue;
        double d = -2 * p.lap(r);
        out.at(cell, 0) = d;
        out.at(cell, 4) = d;
        out.at(cell, 8) = d;
      }
  return out;
}

// --- adaptive quadrature --------------------------------------------------------

namespace {

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return adapt(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adapt(f, a, b, fa, fm, fb, whole, tol, 30);
}

// Panels respecting the two scales eps and R: [0, eps], geometric doubling up
// to R/2, then the cutoff band.
double integrate_radial(const std::function<double(double)>& f, double eps,
                        double R) {
  std::vector<double> knots{0.0};
  double t = std::min(eps, R / 2);
  while (t < R / 2) {
    knots.push_back(t);
    t *= 2;
  }
  knots.push_back(R / 2);
  knots.push_back(0.75 * R);
  knots.push_back(R);
  double total = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += integrate(f, knots[i], knots[i + 1], 1e-12);
  return total;
}

}  // namespace

double continuum_lhs(double eps, double R) {
  RadialPhi p{eps, R};
  auto f = [&](double r) {
    return std::pow(std::sqrt(2.0) * std::abs(p.dphi(r)), 1.5) * 4 * kPi * r *
           r;
  };
  return std::pow(integrate_radial(f, eps, R), 2.0 / 3.0);
}

double continuum_rhs_b(double eps, double R) {
  RadialPhi p{eps, R};
  auto f = [&](double r) {
    return 2 * std::sqrt(3.0) * std::abs(p.lap(r)) * 4 * kPi * r * r;
  };
  return integrate_radial(f, eps, R);
}

// --- experiments -----------------------------------------------------------------

TrendFit fit_trend(const std::vector<double>& log_ratios,
                   const std::vector<double>& kms_ratios) {
  TrendFit t;
  std::size_t n = kms_ratios.size();
  if (n < 2 || log_ratios.size() != n) return t;
  t.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(kms_ratios[i] < kms_ratios[i + 1])) t.strictly_increasing = false;
  t.growth_total = kms_ratios.back() / kms_ratios.front();
  double decades = (log_ratios.back() - log_ratios.front()) / std::log(10.0);
  t.growth_per_decade = std::pow(t.growth_total, 1.0 / decades);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double cube = std::pow(kms_ratios[i], 3.0);
    num += log_ratios[i] * cube;
    den += log_ratios[i] * log_ratios[i];
  }
  t.cube_fit_coeff = num / den;
  t.cube_max_factor = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double cube = std::pow(kms_ratios[i], 3.0);
    double fit = t.cube_fit_coeff * log_ratios[i];
    double dev = std::max(cube / fit, fit / cube);
    t.cube_max_factor = std::max(t.cube_max_factor, dev);
  }
  return t;
}

BlowupResult blowup_experiment(const BlowupConfig& cfg) {
  BlowupResult res;
  res.cfg = cfg;
  PartMap a = part_map("sym", 3);
  HomOperator b = postcompose(part_map("skewtr", 3), curl_op(3));
  Grid g{3, cfg.N, cfg.L_over_R * cfg.R};
  std::vector<double> logs, grid_ratios, cont_ratios;
  for (double rto : cfg.ratios) {
    BlowupRow row;
    row.R = cfg.R;
    row.eps = cfg.R / rto;
    row.N = cfg.N;
    GridField p = counterexample_family(g, row.eps, row.R);
    GridField sp = apply_partmap_field(a, p);
    for (double x : sp.v)
      res.sym_abs_max = std::max(res.sym_abs_max, std::abs(x));
    row.lhs = lp_norm(p, 1.5);
    row.rhs_part = lp_norm(sp, 1.5);
    row.rhs_b = lp_norm(apply_operator_field(b, p), 1.0);
    row.ratio = row.lhs / (row.rhs_part + row.rhs_b);
    row.cont_lhs = continuum_lhs(row.eps, row.R);
    row.cont_rhs_b = continuum_rhs_b(row.eps, row.R);
    row.cont_ratio = row.cont_lhs / row.cont_rhs_b;
    logs.push_back(std::log(rto));
    grid_ratios.push_back(row.ratio);
    cont_ratios.push_back(row.cont_ratio);
    res.rows.push_back(row);
  }
  res.grid_trend = fit_trend(logs, grid_ratios);
  res.continuum_trend = fit_trend(logs, cont_ratios);
  // Stencil convergence on a resolvable instance (eps = R/2) against the
  // closed-form value of the operator.
  double eps = cfg.R / 2;
  res.stencil.n_coarse = cfg.stencil_N;
  res.stencil.n_fine = 2 * cfg.stencil_N;
  for (int pass = 0; pass < 2; ++pass) {
    int N = pass == 0 ? res.stencil.n_coarse : res.stencil.n_fine;
    Grid gs{3, N, 1.25 * cfg.R};
    GridField p = counterexample_family(gs, eps, cfg.R);
    GridField got = apply_operator_field(b, p);
    GridField want = counterexample_rhs_analytic(gs, eps, cfg.R);
    for (std::size_t i = 0; i < got.v.size(); ++i) got.v[i] -= want.v[i];
    double err = lp_norm(got, 2.0) / lp_norm(want, 2.0);
    (pass == 0 ? res.stencil.err_coarse : res.stencil.err_fine) = err;
  }
  res.stencil.order =
      std::log2(res.stencil.err_coarse / res.stencil.err_fine);
  return res;
}

GridField random_bump_field(const Grid& g, int comps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto uniform = [&] { return (rng.next() >> 11) * 0x1.0p-53; };
  constexpr int kWaves = 3;
  // amplitude, phase, wave vector per (component, wave)
  std::vector<double> amp(static_cast<std::size_t>(comps) * kWaves);
  std::vector<double> phase(amp.size());
  std::vector<std::vector<int>> wave(amp.size(), std::vector<int>(g.n));
  for (std::size_t t = 0; t < amp.size(); ++t) {
    amp[t] = 2 * uniform() - 1;
    phase[t] = 2 * kPi * uniform();
    for (int d = 0; d < g.n; ++d)
      wave[t][d] = static_cast<int>(rng.next() % 5) - 2;
  }
  GridField out(g, comps);
  const long cells = g.cells();
  std::vector<double> x(g.n);
  for (long cell = 0; cell < cells; ++cell) {
    double window = 1;
    for (int d = 0; d < g.n; ++d) {
      x[d] = g.coord(axis_index(g, cell, d));
      double u = std::abs(x[d]) / (0.8 * g.L);
      if (u >= 1) {
        window = 0;
        break;
      }
      double c = std::cos(kPi * u / 2);
      window *= c * c;
    }
    if (window == 0) continue;
    for (int c = 0; c < comps; ++c)
      for (int w = 0; w < kWaves; ++w) {
        std::size_t t = static_cast<std::size_t>(c) * kWaves + w;
        double arg = phase[t];
        for (int d = 0; d < g.n; ++d) arg += kPi * wave[t][d] * x[d] / g.L;
        out.at(cell, c) += window * amp[t] * std::cos(arg);
      }
  }
  return out;
}

}  // namespace kms
