#include "kms/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kms {

int mono_deg(const Mono& m) {
  int d = 0;
  for (auto e : m) d += static_cast<int>(e);
  return d;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) throw std::invalid_argument("monomial division not exact");
    r[i] = a[i] - b[i];
  }
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool grevlex_less(const Mono& a, const Mono& b) {
  int da = mono_deg(a), db = mono_deg(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Mono(nvars, 0), c);
  return p;
}

Poly Poly::var(int nvars, int i, std::uint32_t deg) {
  Poly p(nvars);
  Mono m(nvars, 0);
  m[i] = deg;
  p.add_term(m, Rational(1));
  return p;
}

void Poly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(m.size()) != nv_)
    throw std::invalid_argument("monomial arity mismatch");
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

const Mono& Poly::leading_mono() const {
  if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
  return t_.begin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
  return t_.begin()->second;
}

int Poly::total_degree() const {
  if (t_.empty()) return -1;
  return mono_deg(t_.begin()->first);  // grevlex-descending: max degree first
}

bool Poly::is_homogeneous() const {
  if (t_.empty()) return true;
  int d = mono_deg(t_.begin()->first);
  for (const auto& [m, c] : t_)
    if (mono_deg(m) != d) return false;
  return true;
}

Rational Poly::eval(const VecQ& x) const {
  if (static_cast<int>(x.size()) != nv_)
    throw std::invalid_argument("evaluation arity mismatch");
  Rational s = 0;
  for (const auto& [m, c] : t_) {
    Rational term = c;
    for (int i = 0; i < nv_; ++i)
      if (m[i] != 0) term *= rat_pow(x[i], m[i]);
    s += term;
  }
  return s;
}

GaussQ Poly::eval(const std::vector<GaussQ>& x) const {
  if (static_cast<int>(x.size()) != nv_)
    throw std::invalid_argument("evaluation arity mismatch");
  GaussQ s;
  for (const auto& [m, c] : t_) {
    GaussQ term{c, Rational(0)};
    for (int i = 0; i < nv_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) term = term * x[i];
    s = s + term;
  }
  return s;
}

double Poly::eval_d(const std::vector<double>& x) const {
  double s = 0;
  for (const auto& [m, c] : t_) {
    double term = rat_double(c);
    for (int i = 0; i < nv_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) term *= x[i];
    s += term;
  }
  return s;
}

Poly Poly::substitute(int i, const Rational& c) const {
  Poly out(nv_);
  for (const auto& [m, coef] : t_) {
    Mono m2 = m;
    m2[i] = 0;
    out.add_term(m2, coef * rat_pow(c, m[i]));
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("poly arity mismatch");
  Poly r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("poly arity mismatch");
  Poly r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
  return r;
}

Poly operator-(const Poly& a) { return poly_scale(Rational(-1), a); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("poly arity mismatch");
  Poly r(a.nvars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Poly poly_scale(const Rational& c, const Poly& a) {
  Poly r(a.nvars());
  if (c == 0) return r;
  for (const auto& [m, coef] : a.terms()) r.add_term(m, c * coef);
  return r;
}

Poly poly_pow(const Poly& a, unsigned e) {
  Poly r = Poly::constant(a.nvars(), Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

std::string poly_str(const Poly& p, const std::vector<std::string>& var_names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    if (first && sgn(c) < 0) os << "-";
    first = false;
    Rational ac = abs(c);
    bool has_vars = mono_deg(m) > 0;
    if (ac != 1 || !has_vars) os << rat_str(ac);
    bool star = ac != 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (star) os << "*";
      star = true;
      if (i < var_names.size())
        os << var_names[i];
      else
        os << "x" << i;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

Poly norm_sq_poly(int nvars) {
  Poly p(nvars);
  for (int i = 0; i < nvars; ++i) {
    Mono m(nvars, 0);
    m[i] = 2;
    p.add_term(m, Rational(1));
  }
  return p;
}

IntervalQ iv_add(const IntervalQ& a, const IntervalQ& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

IntervalQ iv_mul(const IntervalQ& a, const IntervalQ& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

IntervalQ iv_pow(const IntervalQ& a, std::uint32_t e) {
  if (e == 0) return {Rational(1), Rational(1)};
  Rational plo = rat_pow(a.lo, e), phi = rat_pow(a.hi, e);
  if (e % 2 == 1) return {plo, phi};
  // Even power: monotone on each side of 0.
  if (a.lo >= 0) return {plo, phi};
  if (a.hi <= 0) return {phi, plo};
  return {Rational(0), std::max(plo, phi)};
}

IntervalQ iv_scale(const Rational& c, const IntervalQ& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

IntervalQ interval_eval(const Poly& p, const IntervalBox& box) {
  if (static_cast<int>(box.size()) != p.nvars())
    throw std::invalid_argument("box arity mismatch");
  IntervalQ acc{Rational(0), Rational(0)};
  for (const auto& [m, c] : p.terms()) {
    IntervalQ t{Rational(1), Rational(1)};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t = iv_mul(t, iv_pow(box[i], m[i]));
    acc = iv_add(acc, iv_scale(c, t));
  }
  return acc;
}

Poly normal_form(Poly f, const std::vector<Poly>& g) {
  Poly rem(f.nvars());
  while (!f.is_zero()) {
    bool reduced = false;
    for (const Poly& gi : g) {
      if (gi.is_zero()) continue;
      if (mono_divides(gi.leading_mono(), f.leading_mono())) {
        Mono q = mono_div(f.leading_mono(), gi.leading_mono());
        Rational c = f.leading_coeff() / gi.leading_coeff();
        Poly sub(f.nvars());
        sub.add_term(q, c);
        f = f - sub * gi;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.add_term(f.leading_mono(), f.leading_coeff());
      Poly lead(f.nvars());
      lead.add_term(f.leading_mono(), f.leading_coeff());
      f = f - lead;
    }
  }
  return rem;
}

static Poly s_poly(const Poly& f, const Poly& g) {
  Mono l = mono_lcm(f.leading_mono(), g.leading_mono());
  Poly a(f.nvars()), b(f.nvars());
  a.add_term(mono_div(l, f.leading_mono()), 1 / f.leading_coeff());
  b.add_term(mono_div(l, g.leading_mono()), 1 / g.leading_coeff());
  return a * f - b * g;
}

static bool coprime_leading(const Poly& f, const Poly& g) {
  const Mono& a = f.leading_mono();
  const Mono& b = g.leading_mono();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

std::vector<Poly> buchberger(std::vector<Poly> gens) {
  std::vector<Poly> g;
  for (Poly& p : gens) {
    if (p.is_zero()) continue;
    g.push_back(poly_scale(1 / p.leading_coeff(), p));
  }
  // Interreduce the input first; keeps the pair queue small.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Poly p = g[i];
      std::vector<Poly> others;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (j != i) others.push_back(g[j]);
      Poly r = normal_form(p, others);
      if (!(r == p)) {
        changed = true;
        if (r.is_zero()) {
          g.erase(g.begin() + static_cast<long>(i));
          --i;
        } else {
          g[i] = poly_scale(1 / r.leading_coeff(), r);
        }
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) pairs.emplace_back(i, j);

  for (std::size_t q = 0; q < pairs.size(); ++q) {
    auto [i, j] = pairs[q];
    if (coprime_leading(g[i], g[j])) continue;  // Buchberger's first criterion
    Poly r = normal_form(s_poly(g[i], g[j]), g);
    if (r.is_zero()) continue;
    r = poly_scale(1 / r.leading_coeff(), r);
    for (std::size_t t = 0; t < g.size(); ++t) pairs.emplace_back(t, g.size());
    g.push_back(std::move(r));
  }

  // Minimalize: drop elements whose leading monomial is divisible by another.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      if (!mono_divides(g[j].leading_mono(), g[i].leading_mono())) continue;
      // Equal leading monomials: keep the first occurrence only.
      if (g[j].leading_mono() == g[i].leading_mono() && j > i) continue;
      redundant = true;
      break;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Fully reduce each element against the others.
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = normal_form(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(poly_scale(1 / r.leading_coeff(), r));
  }
  std::sort(reduced.begin(), reduced.end(), [](const Poly& a, const Poly& b) {
    return grevlex_less(b.leading_mono(), a.leading_mono());
  });
  return reduced;
}

bool variety_only_origin(const std::vector<Poly>& gens, int nvars) {
  std::vector<Poly> nz;
  for (const Poly& p : gens) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous())
      throw std::invalid_argument("variety test requires homogeneous generators");
    if (p.total_degree() == 0) return true;  // unit ideal, empty variety
    nz.push_back(p);
  }
  if (nvars == 0) return true;
  if (nz.empty()) return false;  // zero ideal, whole space
  std::vector<Poly> gb = buchberger(nz);
  // Homogeneous ideal vanishes only at 0 iff the quotient is finite
  // dimensional iff every variable has a pure power among the leading terms.
  for (int v = 0; v < nvars; ++v) {
    bool found = false;
    for (const Poly& p : gb) {
      const Mono& m = p.leading_mono();
      bool pure = m[v] > 0;
      for (int u = 0; u < nvars && pure; ++u)
        if (u != v && m[u] != 0) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Poly poly_div_exact(Poly a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  Poly q(a.nvars());
  while (!a.is_zero()) {
    if (!mono_divides(b.leading_mono(), a.leading_mono()))
      throw std::logic_error("polynomial division not exact");
    Mono m = mono_div(a.leading_mono(), b.leading_mono());
    Rational c = a.leading_coeff() / b.leading_coeff();
    Poly t(a.nvars());
    t.add_term(m, c);
    q = q + t;
    a = a - t * b;
  }
  return q;
}

Poly poly_det(std::vector<Poly> m, int n) {
  if (n == 0) throw std::invalid_argument("empty determinant");
  auto at = [&](int i, int j) -> Poly& {
    return m[static_cast<std::size_t>(i) * n + j];
  };
  int nv = at(0, 0).nvars();
  Poly prev = Poly::constant(nv, Rational(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!at(i, k).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Poly(nv);  // zero column: determinant vanishes
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        at(i, j) = poly_div_exact(at(k, k) * at(i, j) - at(i, k) * at(k, j), prev);
      at(i, k) = Poly(nv);
    }
    prev = at(k, k);
  }
  return sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
}

int poly_matrix_generic_rank(std::vector<Poly> m, int rows, int cols) {
  if (rows == 0 || cols == 0) return 0;
  auto at = [&](int i, int j) -> Poly& {
    return m[static_cast<std::size_t>(i) * cols + j];
  };
  int nv = at(0, 0).nvars();
  Poly prev = Poly::constant(nv, Rational(1));
  int steps = std::min(rows, cols);
  int r = 0;
  for (int k = 0; k < steps; ++k) {
    // Full pivoting: first nonzero entry of the trailing block (row-major).
    int pi = -1, pj = -1;
    for (int i = k; i < rows && pi < 0; ++i)
      for (int j = k; j < cols; ++j)
        if (!at(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != k)
      for (int j = 0; j < cols; ++j) std::swap(at(pi, j), at(k, j));
    if (pj != k)
      for (int i = 0; i < rows; ++i) std::swap(at(i, pj), at(i, k));
    ++r;
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j)
        at(i, j) = poly_div_exact(at(k, k) * at(i, j) - at(i, k) * at(k, j), prev);
      at(i, k) = Poly(nv);
    }
    prev = at(k, k);
  }
  return r;
}

}  // namespace kms
