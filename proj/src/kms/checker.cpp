#include "kms/checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace kms {

const char* status_str(Status s) {
  switch (s) {
    case Status::CertifiedYes: return "yes";
    case Status::CertifiedNo: return "no";
    default: return "unknown";
  }
}

const char* check_kind_str(CheckKind k) {
  switch (k) {
    case CheckKind::ReducedEllipticity: return "reduced_ellipticity";
    case CheckKind::ReducedCEllipticity: return "reduced_c_ellipticity";
    case CheckKind::ReducedCancellation: return "reduced_cancellation";
    case CheckKind::FullCancellation: return "full_cancellation";
    case CheckKind::PartialCancellation: return "partial_cancellation";
    case CheckKind::Cocancellation: return "cocancellation";
    default: return "constant_rank";
  }
}

std::vector<VecQ> sample_directions(int n, const Budget& budget) {
  std::vector<VecQ> dirs;
  auto e = [&](int i, int s) {
    VecQ v(n, Rational(0));
    v[i] = s;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    dirs.push_back(e(i, 1));
    dirs.push_back(e(i, -1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          VecQ v(n, Rational(0));
          v[i] = si;
          v[j] = sj;
          dirs.push_back(std::move(v));
        }
  SplitMix64 rng(budget.seed);
  int added = 0;
  while (added < budget.samples) {
    VecQ v(n);
    for (int i = 0; i < n; ++i) {
      long num = static_cast<long>(rng.next() % 195) - 97;
      long den = 1 + static_cast<long>(rng.next() % 97);
      Rational q(num, den);
      q.canonicalize();
      v[i] = q;
    }
    if (vec_is_zero(v)) continue;
    dirs.push_back(std::move(v));
    ++added;
  }
  return dirs;
}

static VecQ combine(const std::vector<VecQ>& basis, const VecQ& coords,
                    int ambient) {
  VecQ v(ambient, Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coords[i] != 0) v = vec_add(v, vec_scale(coords[i], basis[i]));
  return v;
}

// --- interval branch-and-bound on the unit sphere ---------------------------

namespace {

struct BBOutcome {
  enum Kind { Positive, ZeroFound, Exhausted } kind = Positive;
  VecQ zero_point;
  int depth_reached = 0;
  long boxes = 0;
};

// Proves g > 0 on {|xi|_inf = 1} (g homogeneous of even degree, hence it
// suffices for g > 0 away from the origin), or finds an exact zero at a box
// midpoint, or gives up at the depth/box budget.
BBOutcome prove_positive_on_sphere(const Poly& g, int n, int max_depth,
                                   long max_boxes) {
  BBOutcome out;
  struct Item {
    IntervalBox box;
    int depth;
  };
  for (int face = 0; face < 2 * n; ++face) {
    int fixed = face / 2;
    Rational fval = face % 2 == 0 ? Rational(1) : Rational(-1);
    IntervalBox root(n, IntervalQ{Rational(-1), Rational(1)});
    root[fixed] = IntervalQ{fval, fval};
    std::vector<Item> stack{{std::move(root), 0}};
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      ++out.boxes;
      out.depth_reached = std::max(out.depth_reached, it.depth);
      if (out.boxes > max_boxes) {
        out.kind = BBOutcome::Exhausted;
        return out;
      }
      IntervalQ enc = interval_eval(g, it.box);
      if (enc.lo > 0) continue;  // certified positive on this box
      VecQ mid(n);
      for (int i = 0; i < n; ++i) mid[i] = (it.box[i].lo + it.box[i].hi) / 2;
      if (g.eval(mid) == 0) {
        out.kind = BBOutcome::ZeroFound;
        out.zero_point = std::move(mid);
        return out;
      }
      if (it.depth >= max_depth) {
        out.kind = BBOutcome::Exhausted;
        return out;
      }
      // Split the widest coordinate (lowest index wins ties).
      int split = -1;
      Rational width(-1);
      for (int i = 0; i < n; ++i) {
        Rational w = it.box[i].hi - it.box[i].lo;
        if (w > width) {
          width = w;
          split = i;
        }
      }
      Rational m = (it.box[split].lo + it.box[split].hi) / 2;
      Item lo{it.box, it.depth + 1}, hi{it.box, it.depth + 1};
      lo.box[split].hi = m;
      hi.box[split].lo = m;
      stack.push_back(std::move(hi));
      stack.push_back(std::move(lo));
    }
  }
  return out;
}

constexpr long kMaxBoxes = 200000;

}  // namespace

// --- ellipticity -------------------------------------------------------------

static void require_domains_match(const PartMap& a, const HomOperator& b) {
  if (!(a.domain == b.domain))
    throw std::invalid_argument("part map and operator act on different spaces");
}

static EllipticityWitness witness_at(const HomOperator& brest,
                                     const std::vector<VecQ>& ker,
                                     int ambient, const VecQ& xi) {
  auto kv = kernel_basis(symbol_eval(brest, xi));
  if (kv.empty()) throw std::logic_error("expected a rank drop");
  return EllipticityWitness{xi, combine(ker, kv[0], ambient)};
}

Verdict check_reduced_ellipticity(const PartMap& a, const HomOperator& b,
                                  const Budget& budget) {
  require_domains_match(a, b);
  Verdict v;
  std::vector<VecQ> ker = kernel_basis(a.m);
  int r = static_cast<int>(ker.size());
  if (r == 0) {
    v.status = Status::CertifiedYes;
    v.note = "part map kernel is trivial";
    return v;
  }
  HomOperator brest = restrict_op(b, ker, "K");
  int w = b.codomain.dim;
  int n = b.dim_n;
  VecQ e0(n, Rational(0));
  e0[0] = 1;
  if (w < r) {
    v.status = Status::CertifiedNo;
    v.evidence = witness_at(brest, ker, b.domain.dim, e0);
    v.note = "codomain dimension below restricted domain dimension";
    return v;
  }
  for (const VecQ& xi : sample_directions(n, budget)) {
    ++v.budget.samples_used;
    auto kv = kernel_basis(symbol_eval(brest, xi));
    if (!kv.empty()) {
      v.status = Status::CertifiedNo;
      v.evidence = EllipticityWitness{xi, combine(ker, kv[0], b.domain.dim)};
      v.note = "restricted symbol drops rank at a sample direction";
      return v;
    }
  }
  // Gram determinant of the restricted symbol: positive everywhere away from
  // the origin iff the restricted symbol is injective for all real xi != 0.
  SymbolMatrix s = symbol_matrix(brest);
  std::vector<Poly> gram(static_cast<std::size_t>(r) * r, Poly(n));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly acc(n);
      for (int t = 0; t < w; ++t) acc = acc + s.at(t, i) * s.at(t, j);
      gram[static_cast<std::size_t>(i) * r + j] = std::move(acc);
    }
  Poly g = poly_det(std::move(gram), r);
  if (g.is_zero()) {
    // Symbol rank is below r for every direction.
    v.status = Status::CertifiedNo;
    v.evidence = witness_at(brest, ker, b.domain.dim, e0);
    v.note = "restricted symbol is rank deficient identically";
    return v;
  }
  BBOutcome bb = prove_positive_on_sphere(g, n, budget.depth, kMaxBoxes);
  v.budget.depth_reached = bb.depth_reached;
  v.budget.boxes = bb.boxes;
  switch (bb.kind) {
    case BBOutcome::Positive:
      v.status = Status::CertifiedYes;
      v.note = "gram determinant certified positive on the unit sphere";
      return v;
    case BBOutcome::ZeroFound:
      v.status = Status::CertifiedNo;
      v.evidence = witness_at(brest, ker, b.domain.dim, bb.zero_point);
      v.note = "gram determinant vanishes at an exact rational direction";
      return v;
    default:
      v.status = Status::Unknown;
      v.note = "branch-and-bound budget exhausted before certifying positivity";
      return v;
  }
}

// --- C-ellipticity -----------------------------------------------------------

static ComplexWitness complex_witness_real(const HomOperator& brest,
                                           const std::vector<VecQ>& ker,
                                           int ambient, const VecQ& xi) {
  EllipticityWitness w = witness_at(brest, ker, ambient, xi);
  ComplexWitness cw;
  for (const auto& c : w.xi) cw.xi.push_back(GaussQ(c));
  for (const auto& c : w.v) cw.v.push_back(GaussQ(c));
  return cw;
}

Verdict check_reduced_c_ellipticity(const PartMap& a, const HomOperator& b,
                                    const Budget& budget) {
  require_domains_match(a, b);
  Verdict v;
  std::vector<VecQ> ker = kernel_basis(a.m);
  int r = static_cast<int>(ker.size());
  if (r == 0) {
    v.status = Status::CertifiedYes;
    v.note = "part map kernel is trivial";
    return v;
  }
  HomOperator brest = restrict_op(b, ker, "K");
  int w = b.codomain.dim;
  int n = b.dim_n;
  VecQ e0(n, Rational(0));
  e0[0] = 1;
  if (w < r) {
    v.status = Status::CertifiedNo;
    v.evidence = complex_witness_real(brest, ker, b.domain.dim, e0);
    v.note = "codomain dimension below restricted domain dimension";
    return v;
  }
  SymbolMatrix s = symbol_matrix(brest);
  // Ideal of maximal minors: its complex variety is exactly the set of
  // directions where the restricted symbol drops rank.
  std::vector<Poly> minors;
  std::vector<int> rowsel(r);
  for (int i = 0; i < r; ++i) rowsel[i] = i;
  bool any_nonzero = false;
  while (true) {
    std::vector<Poly> sub(static_cast<std::size_t>(r) * r, Poly(n));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub[static_cast<std::size_t>(i) * r + j] = s.at(rowsel[i], j);
    Poly d = poly_det(std::move(sub), r);
    if (!d.is_zero()) {
      any_nonzero = true;
      minors.push_back(std::move(d));
    }
    // next combination of r rows out of w
    int pos = r - 1;
    while (pos >= 0 && rowsel[pos] == w - r + pos) --pos;
    if (pos < 0) break;
    ++rowsel[pos];
    for (int q = pos + 1; q < r; ++q) rowsel[q] = rowsel[q - 1] + 1;
  }
  if (!any_nonzero) {
    v.status = Status::CertifiedNo;
    v.evidence = complex_witness_real(brest, ker, b.domain.dim, e0);
    v.note = "restricted symbol is rank deficient identically";
    return v;
  }
  if (variety_only_origin(minors, n)) {
    v.status = Status::CertifiedYes;
    v.note = "minor ideal has a pure power of every variable in its "
             "leading-term ideal";
    return v;
  }
  v.status = Status::CertifiedNo;
  v.note = "minor ideal vanishes on a nonzero complex direction";
  // Try to produce a concrete witness: first over R at the sample
  // directions, then over small Gaussian rationals.
  for (const VecQ& xi : sample_directions(n, budget)) {
    ++v.budget.samples_used;
    auto kv = kernel_basis(symbol_eval(brest, xi));
    if (!kv.empty()) {
      v.evidence = complex_witness_real(brest, ker, b.domain.dim, xi);
      return v;
    }
  }
  std::vector<GaussQ> values;
  for (int norm = 0; norm <= 4; ++norm)
    for (int re = -2; re <= 2; ++re)
      for (int im = -2; im <= 2; ++im)
        if (std::abs(re) + std::abs(im) == norm)
          values.emplace_back(Rational(re), Rational(im));
  std::vector<int> pick(n, 0);
  while (true) {
    bool allzero = true;
    for (int i = 0; i < n; ++i)
      if (pick[i] != 0) allzero = false;
    if (!allzero) {
      std::vector<GaussQ> xi(n);
      for (int i = 0; i < n; ++i) xi[i] = values[pick[i]];
      std::vector<GaussQ> m = symbol_eval_gauss(brest, xi);
      auto kv = kernel_basis_gauss(w, r, std::move(m));
      if (!kv.empty()) {
        ComplexWitness cw;
        cw.xi = std::move(xi);
        cw.v.assign(b.domain.dim, GaussQ());
        for (int i = 0; i < r; ++i)
          for (int d = 0; d < b.domain.dim; ++d)
            cw.v[d] = cw.v[d] + kv[0][i] * GaussQ(ker[i][d]);
        v.evidence = std::move(cw);
        return v;
      }
    }
    int pos = n - 1;
    while (pos >= 0 && pick[pos] == static_cast<int>(values.size()) - 1) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int q = pos + 1; q < n; ++q) pick[q] = 0;
  }
  v.note += "; no small witness direction found";
  return v;
}

// --- cancellation ------------------------------------------------------------

namespace {

// Linear solve for a certificate B[xi] v(xi) = |xi|^{2s} w with v valued in
// the restricted domain. Unknowns: coefficients of each coordinate polynomial
// of homogeneous degree 2s - k.
std::optional<Certificate> find_certificate(const SymbolMatrix& s,
                                            const std::vector<VecQ>& ker,
                                            int order, int n, const VecQ& w,
                                            const Budget& budget,
                                            BudgetReport& report) {
  int r = static_cast<int>(ker.size());
  int wdim = s.rows;
  for (int scale = (order + 1) / 2; scale <= budget.smax; ++scale) {
    report.smax_searched = std::max(report.smax_searched, scale);
    int d = 2 * scale - order;
    std::vector<MultiIdx> unknowns = multi_indices(n, d);
    std::vector<MultiIdx> eqs = multi_indices(n, 2 * scale);
    int ncols = r * static_cast<int>(unknowns.size());
    int nrows = wdim * static_cast<int>(eqs.size());
    MatQ m(nrows, ncols);
    VecQ rhs(nrows, Rational(0));
    Poly normpow = poly_pow(norm_sq_poly(n), static_cast<unsigned>(scale));
    for (int wi = 0; wi < wdim; ++wi)
      for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
        int row = wi * static_cast<int>(eqs.size()) + static_cast<int>(ei);
        const Mono nu(eqs[ei].begin(), eqs[ei].end());
        auto nt = normpow.terms().find(nu);
        if (nt != normpow.terms().end()) rhs[row] = nt->second * w[wi];
        for (int i = 0; i < r; ++i) {
          const Poly& p = s.at(wi, i);
          for (std::size_t ui = 0; ui < unknowns.size(); ++ui) {
            const MultiIdx& mu = unknowns[ui];
            bool ok = true;
            Mono lam(nu.size());
            for (std::size_t q = 0; q < nu.size(); ++q) {
              if (mu[q] > nu[q]) {
                ok = false;
                break;
              }
              lam[q] = nu[q] - mu[q];
            }
            if (!ok) continue;
            auto it = p.terms().find(lam);
            if (it == p.terms().end()) continue;
            m.at(row, i * static_cast<int>(unknowns.size()) +
                          static_cast<int>(ui)) = it->second;
          }
        }
      }
    auto sol = solve(m, rhs);
    if (!sol) continue;
    Certificate cert;
    cert.w = w;
    cert.s = scale;
    cert.kernel_basis = ker;
    cert.coords.assign(r, Poly(n));
    for (int i = 0; i < r; ++i)
      for (std::size_t ui = 0; ui < unknowns.size(); ++ui) {
        const Rational& c = (*sol)[i * static_cast<int>(unknowns.size()) +
                                   static_cast<int>(ui)];
        if (c != 0)
          cert.coords[i].add_term(Mono(unknowns[ui].begin(), unknowns[ui].end()), c);
      }
    // Exact symbolic re-check before emitting.
    for (int wi = 0; wi < wdim; ++wi) {
      Poly lhs(n);
      for (int i = 0; i < r; ++i) lhs = lhs + s.at(wi, i) * cert.coords[i];
      Poly want = poly_scale(w[wi], normpow);
      if (!(lhs == want)) throw std::logic_error("certificate solver produced an invalid certificate");
    }
    return cert;
  }
  return std::nullopt;
}

Verdict cancellation_impl(const std::vector<VecQ>& ker, const HomOperator& b,
                          const Subspace* constraint, const Budget& budget) {
  Verdict v;
  int r = static_cast<int>(ker.size());
  int w = b.codomain.dim;
  if (r == 0) {
    v.status = Status::CertifiedYes;
    v.note = "restricted domain is trivial, every image is zero";
    return v;
  }
  HomOperator brest = restrict_op(b, ker, "K");
  Subspace c = constraint ? *constraint : full_space(w);
  for (const VecQ& xi : sample_directions(b.dim_n, budget)) {
    ++v.budget.samples_used;
    if (c.dim() == 0) break;
    c = intersect(c, span_of(w, image_basis(symbol_eval(brest, xi))));
  }
  if (c.dim() == 0) {
    v.status = Status::CertifiedYes;
    v.note = "exact intersection of sampled images is zero; the intersection "
             "over all directions is contained in it";
    return v;
  }
  SymbolMatrix s = symbol_matrix(brest);
  for (const VecQ& wvec : c.basis) {
    auto cert = find_certificate(s, ker, b.order, b.dim_n, wvec, budget,
                                 v.budget);
    if (cert) {
      v.status = Status::CertifiedNo;
      v.evidence = std::move(*cert);
      v.note = "nonzero element certified to lie in every image";
      return v;
    }
  }
  v.status = Status::Unknown;
  v.note = "sampled intersection stabilized at dimension " +
           std::to_string(c.dim()) +
           " but no certificate exists within the degree budget";
  return v;
}

}  // namespace

Verdict check_reduced_cancellation(const PartMap& a, const HomOperator& b,
                                   const Budget& budget) {
  require_domains_match(a, b);
  return cancellation_impl(kernel_basis(a.m), b, nullptr, budget);
}

Verdict check_full_cancellation(const HomOperator& b, const Budget& budget) {
  std::vector<VecQ> full;
  for (int i = 0; i < b.domain.dim; ++i) {
    VecQ v(b.domain.dim, Rational(0));
    v[i] = 1;
    full.push_back(std::move(v));
  }
  return cancellation_impl(full, b, nullptr, budget);
}

Verdict check_partial_cancellation(const PartMap& a, const HomOperator& b,
                                   const PartMap& t, const Budget& budget) {
  require_domains_match(a, b);
  if (!(t.domain == b.codomain))
    throw std::invalid_argument("constraint map must act on the operator codomain");
  Subspace kt = span_of(b.codomain.dim, kernel_basis(t.m));
  return cancellation_impl(kernel_basis(a.m), b, &kt, budget);
}

Verdict check_cocancellation(const HomOperator& b) {
  Verdict v;
  int dim = b.domain.dim;
  std::vector<VecQ> rows;
  for (const auto& [alpha, m] : b.coeff)
    for (int i = 0; i < m.rows; ++i) {
      VecQ row(dim);
      for (int j = 0; j < dim; ++j) row[j] = m.at(i, j);
      rows.push_back(std::move(row));
    }
  auto ker = kernel_basis(from_rows(dim, rows));
  if (ker.empty()) {
    v.status = Status::CertifiedYes;
    v.note = "coefficient matrices have trivial common kernel";
  } else {
    v.status = Status::CertifiedNo;
    v.evidence = KernelWitness{ker[0]};
    v.note = "nonzero vector annihilated by every coefficient matrix";
  }
  return v;
}

Verdict check_constant_rank(const HomOperator& b, const Budget& budget) {
  Verdict v;
  SymbolMatrix s = symbol_matrix(b);
  int wdim = s.rows, vdim = s.cols, n = b.dim_n;
  int r0 = poly_matrix_generic_rank(s.e, wdim, vdim);
  if (r0 == 0) {
    v.status = Status::CertifiedYes;
    v.note = "symbol vanishes identically";
    return v;
  }
  std::optional<VecQ> hi;
  std::optional<VecQ> lo;
  int rank_lo = 0;
  for (const VecQ& xi : sample_directions(n, budget)) {
    ++v.budget.samples_used;
    int rk = rank(symbol_eval(b, xi));
    if (rk == r0 && !hi) hi = xi;
    if (rk < r0 && !lo) {
      lo = xi;
      rank_lo = rk;
    }
    if (hi && lo) break;
  }
  if (lo) {
    if (!hi) {
      v.status = Status::Unknown;
      v.note = "rank drop found but no sampled direction attains the generic rank";
      return v;
    }
    v.status = Status::CertifiedNo;
    v.evidence = RankDropWitness{*lo, *hi, rank_lo, r0};
    v.note = "symbol rank differs between two exact directions";
    return v;
  }
  // Sum over principal r0-minors of the symbol Gram matrix: by Cauchy-Binet a
  // sum of squares of all r0-minors, hence zero exactly at rank-drop points.
  std::vector<Poly> gram(static_cast<std::size_t>(vdim) * vdim, Poly(n));
  for (int i = 0; i < vdim; ++i)
    for (int j = 0; j < vdim; ++j) {
      Poly acc(n);
      for (int t = 0; t < wdim; ++t) acc = acc + s.at(t, i) * s.at(t, j);
      gram[static_cast<std::size_t>(i) * vdim + j] = std::move(acc);
    }
  Poly h(n);
  std::vector<int> sel(r0);
  for (int i = 0; i < r0; ++i) sel[i] = i;
  while (true) {
    std::vector<Poly> sub(static_cast<std::size_t>(r0) * r0, Poly(n));
    for (int i = 0; i < r0; ++i)
      for (int j = 0; j < r0; ++j)
        sub[static_cast<std::size_t>(i) * r0 + j] =
            gram[static_cast<std::size_t>(sel[i]) * vdim + sel[j]];
    h = h + poly_det(std::move(sub), r0);
    int pos = r0 - 1;
    while (pos >= 0 && sel[pos] == vdim - r0 + pos) --pos;
    if (pos < 0) break;
    ++sel[pos];
    for (int q = pos + 1; q < r0; ++q) sel[q] = sel[q - 1] + 1;
  }
  BBOutcome bb = prove_positive_on_sphere(h, n, budget.depth, kMaxBoxes);
  v.budget.depth_reached = bb.depth_reached;
  v.budget.boxes = bb.boxes;
  switch (bb.kind) {
    case BBOutcome::Positive:
      v.status = Status::CertifiedYes;
      v.note = "symbol rank is " + std::to_string(r0) +
               " for every nonzero direction";
      return v;
    case BBOutcome::ZeroFound: {
      v.status = Status::CertifiedNo;
      int rk = rank(symbol_eval(b, bb.zero_point));
      v.evidence = RankDropWitness{bb.zero_point, *hi, rk, r0};
      v.note = "symbol rank drops at an exact rational direction";
      return v;
    }
    default:
      v.status = Status::Unknown;
      v.note = "branch-and-bound budget exhausted before certifying constant rank";
      return v;
  }
}

// --- evidence re-verification -------------------------------------------------

static bool in_kernel(const PartMap* a, const VecQ& v) {
  if (!a) return true;
  return vec_is_zero(mat_vec(a->m, v));
}

bool verify_evidence(CheckKind kind, const Evidence& ev, const PartMap* a,
                     const HomOperator& b, const PartMap* t) {
  switch (kind) {
    case CheckKind::ReducedEllipticity: {
      const auto* w = std::get_if<EllipticityWitness>(&ev);
      if (!w) return false;
      if (static_cast<int>(w->xi.size()) != b.dim_n) return false;
      if (static_cast<int>(w->v.size()) != b.domain.dim) return false;
      if (vec_is_zero(w->xi) || vec_is_zero(w->v)) return false;
      if (!in_kernel(a, w->v)) return false;
      return vec_is_zero(mat_vec(symbol_eval(b, w->xi), w->v));
    }
    case CheckKind::ReducedCEllipticity: {
      const auto* w = std::get_if<ComplexWitness>(&ev);
      if (!w) return false;
      if (static_cast<int>(w->xi.size()) != b.dim_n) return false;
      if (static_cast<int>(w->v.size()) != b.domain.dim) return false;
      bool xz = true, vz = true;
      for (const auto& c : w->xi) xz = xz && c.is_zero();
      for (const auto& c : w->v) vz = vz && c.is_zero();
      if (xz || vz) return false;
      if (a) {
        VecQ re(w->v.size()), im(w->v.size());
        for (std::size_t i = 0; i < w->v.size(); ++i) {
          re[i] = w->v[i].re;
          im[i] = w->v[i].im;
        }
        if (!vec_is_zero(mat_vec(a->m, re)) || !vec_is_zero(mat_vec(a->m, im)))
          return false;
      }
      std::vector<GaussQ> m = symbol_eval_gauss(b, w->xi);
      for (int i = 0; i < b.codomain.dim; ++i) {
        GaussQ acc;
        for (int j = 0; j < b.domain.dim; ++j)
          acc = acc + m[static_cast<std::size_t>(i) * b.domain.dim + j] * w->v[j];
        if (!acc.is_zero()) return false;
      }
      return true;
    }
    case CheckKind::ReducedCancellation:
    case CheckKind::FullCancellation:
    case CheckKind::PartialCancellation: {
      const auto* c = std::get_if<Certificate>(&ev);
      if (!c) return false;
      if (static_cast<int>(c->w.size()) != b.codomain.dim) return false;
      if (vec_is_zero(c->w)) return false;
      if (c->s < 1 || c->kernel_basis.empty()) return false;
      if (c->coords.size() != c->kernel_basis.size()) return false;
      if (kind == CheckKind::PartialCancellation) {
        if (!t) return false;
        if (!vec_is_zero(mat_vec(t->m, c->w))) return false;
      }
      int d = 2 * c->s - b.order;
      if (d < 0) return false;
      for (const auto& kb : c->kernel_basis) {
        if (static_cast<int>(kb.size()) != b.domain.dim) return false;
        if (kind != CheckKind::FullCancellation && !in_kernel(a, kb))
          return false;
      }
      for (const Poly& p : c->coords) {
        if (p.nvars() != b.dim_n) return false;
        if (!p.is_zero() && (!p.is_homogeneous() || p.total_degree() != d))
          return false;
      }
      // Symbolic identity B[xi] v(xi) = |xi|^{2s} w.
      std::vector<Poly> vpoly(b.domain.dim, Poly(b.dim_n));
      for (std::size_t i = 0; i < c->kernel_basis.size(); ++i)
        for (int dcoord = 0; dcoord < b.domain.dim; ++dcoord)
          if (c->kernel_basis[i][dcoord] != 0)
            vpoly[dcoord] =
                vpoly[dcoord] +
                poly_scale(c->kernel_basis[i][dcoord], c->coords[i]);
      SymbolMatrix s = symbol_matrix(b);
      Poly normpow = poly_pow(norm_sq_poly(b.dim_n), static_cast<unsigned>(c->s));
      for (int wi = 0; wi < b.codomain.dim; ++wi) {
        Poly lhs(b.dim_n);
        for (int j = 0; j < b.domain.dim; ++j)
          lhs = lhs + s.at(wi, j) * vpoly[j];
        if (!(lhs == poly_scale(c->w[wi], normpow))) return false;
      }
      return true;
    }
    case CheckKind::ConstantRank: {
      const auto* w = std::get_if<RankDropWitness>(&ev);
      if (!w) return false;
      if (vec_is_zero(w->xi_lo) || vec_is_zero(w->xi_hi)) return false;
      if (w->rank_lo == w->rank_hi) return false;
      return rank(symbol_eval(b, w->xi_lo)) == w->rank_lo &&
             rank(symbol_eval(b, w->xi_hi)) == w->rank_hi;
    }
    case CheckKind::Cocancellation: {
      const auto* w = std::get_if<KernelWitness>(&ev);
      if (!w) return false;
      if (static_cast<int>(w->v.size()) != b.domain.dim) return false;
      if (vec_is_zero(w->v)) return false;
      for (const auto& [alpha, m] : b.coeff)
        if (!vec_is_zero(mat_vec(m, w->v))) return false;
      return true;
    }
  }
  return false;
}

// --- aggregate verdict --------------------------------------------------------

ValidityReport kms_validity(const PartMap& a, const HomOperator& b,
                            const Budget& budget) {
  require_domains_match(a, b);
  ValidityReport rep;
  rep.criterion =
      "valid for p in (1,n) iff reduced elliptic; valid at p=1 iff reduced "
      "elliptic and reduced cancelling relative to the part map";
  int r = static_cast<int>(kernel_basis(a.m).size());
  rep.c_ellipticity = check_reduced_c_ellipticity(a, b, budget);
  if (rep.c_ellipticity.status == Status::CertifiedYes) {
    rep.ellipticity.status = Status::CertifiedYes;
    rep.ellipticity.note = "implied by C-ellipticity";
    rep.cancellation.status = Status::CertifiedYes;
    rep.cancellation.note = "implied by C-ellipticity";
    rep.lp = rep.l1 = Status::CertifiedYes;
    rep.via = r == 0 ? "vacuous" : "c-elliptic";
    return rep;
  }
  rep.ellipticity = check_reduced_ellipticity(a, b, budget);
  rep.cancellation = check_reduced_cancellation(a, b, budget);
  rep.lp = rep.ellipticity.status;
  if (rep.ellipticity.status == Status::CertifiedNo ||
      rep.cancellation.status == Status::CertifiedNo)
    rep.l1 = Status::CertifiedNo;
  else if (rep.ellipticity.status == Status::CertifiedYes &&
           rep.cancellation.status == Status::CertifiedYes)
    rep.l1 = Status::CertifiedYes;
  else
    rep.l1 = Status::Unknown;
  if (rep.lp == Status::CertifiedYes && rep.l1 == Status::CertifiedYes)
    rep.via = "elliptic+cancelling";
  else if (rep.lp == Status::CertifiedNo || rep.l1 == Status::CertifiedNo)
    rep.via = "counterexample";
  else
    rep.via = "unknown";
  return rep;
}

}  // namespace kms
