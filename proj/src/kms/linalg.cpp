#include "kms/linalg.hpp"

#include <stdexcept>

namespace kms {

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ MatQ::transpose() const {
  MatQ t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool MatQ::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

static void check_same_shape(const MatQ& x, const MatQ& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
}

MatQ mat_add(const MatQ& x, const MatQ& y) {
  check_same_shape(x, y);
  MatQ r(x.rows, x.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

MatQ mat_sub(const MatQ& x, const MatQ& y) {
  check_same_shape(x, y);
  MatQ r(x.rows, x.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

MatQ mat_mul(const MatQ& x, const MatQ& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
  MatQ r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rational& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

MatQ mat_scale(const Rational& c, const MatQ& x) {
  MatQ r(x.rows, x.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = c * x.a[i];
  return r;
}

VecQ mat_vec(const MatQ& x, const VecQ& v) {
  if (static_cast<int>(v.size()) != x.cols)
    throw std::invalid_argument("matrix-vector shape mismatch");
  VecQ r(x.rows, Rational(0));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x.at(i, j) != 0) r[i] += x.at(i, j) * v[j];
  return r;
}

MatQ from_rows(int ambient, const std::vector<VecQ>& rows) {
  MatQ m(static_cast<int>(rows.size()), ambient);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != ambient)
      throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < ambient; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatQ from_cols(int ambient, const std::vector<VecQ>& cols) {
  MatQ m(ambient, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j) {
    if (static_cast<int>(cols[j].size()) != ambient)
      throw std::invalid_argument("column length mismatch");
    for (int i = 0; i < ambient; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

VecQ vec_add(const VecQ& x, const VecQ& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
  VecQ r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

VecQ vec_sub(const VecQ& x, const VecQ& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
  VecQ r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

VecQ vec_scale(const Rational& c, const VecQ& x) {
  VecQ r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

Rational dot(const VecQ& x, const VecQ& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool vec_is_zero(const VecQ& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

Rref rref(MatQ m) {
  Rref out;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rational inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.r = std::move(m);
  return out;
}

int rank(const MatQ& m) { return rref(m).rank; }

std::vector<VecQ> kernel_basis(const MatQ& m) {
  Rref f = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : f.pivot_cols) is_pivot[c] = true;
  std::vector<VecQ> out;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    VecQ v(m.cols, Rational(0));
    v[c] = 1;
    for (int i = 0; i < f.rank; ++i) v[f.pivot_cols[i]] = -f.r.at(i, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VecQ> image_basis(const MatQ& m) {
  Rref f = rref(m);
  std::vector<VecQ> out;
  for (int c : f.pivot_cols) {
    VecQ v(m.rows);
    for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<VecQ> solve(const MatQ& m, const VecQ& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("rhs length mismatch");
  MatQ aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  Rref f = rref(std::move(aug));
  for (int c : f.pivot_cols)
    if (c == m.cols) return std::nullopt;  // inconsistent
  VecQ x(m.cols, Rational(0));
  for (int i = 0; i < f.rank; ++i) x[f.pivot_cols[i]] = f.r.at(i, m.cols);
  return x;
}

Subspace span_of(int ambient, const std::vector<VecQ>& vecs) {
  Rref f = rref(from_rows(ambient, vecs));
  Subspace s;
  s.ambient = ambient;
  for (int i = 0; i < f.rank; ++i) {
    VecQ v(ambient);
    for (int j = 0; j < ambient; ++j) v[j] = f.r.at(i, j);
    s.basis.push_back(std::move(v));
  }
  return s;
}

Subspace full_space(int ambient) {
  std::vector<VecQ> rows;
  for (int i = 0; i < ambient; ++i) {
    VecQ v(ambient, Rational(0));
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace{ambient, std::move(rows)};
}

Subspace zero_space(int ambient) { return Subspace{ambient, {}}; }

Subspace intersect(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient != s2.ambient)
    throw std::invalid_argument("ambient dimension mismatch");
  if (s1.dim() == 0 || s2.dim() == 0) return zero_space(s1.ambient);
  // x in both spans iff x = B1^T c1 = B2^T c2; stack [B1^T | B2^T] and take
  // kernel vectors (c1, -c2).
  MatQ m(s1.ambient, s1.dim() + s2.dim());
  for (int i = 0; i < s1.ambient; ++i) {
    for (int j = 0; j < s1.dim(); ++j) m.at(i, j) = s1.basis[j][i];
    for (int j = 0; j < s2.dim(); ++j) m.at(i, s1.dim() + j) = s2.basis[j][i];
  }
  std::vector<VecQ> gens;
  for (const VecQ& c : kernel_basis(m)) {
    VecQ x(s1.ambient, Rational(0));
    for (int j = 0; j < s1.dim(); ++j)
      if (c[j] != 0) x = vec_add(x, vec_scale(c[j], s1.basis[j]));
    gens.push_back(std::move(x));
  }
  return span_of(s1.ambient, gens);
}

Subspace orth_complement(const Subspace& s) {
  if (s.dim() == 0) return full_space(s.ambient);
  return span_of(s.ambient, kernel_basis(from_rows(s.ambient, s.basis)));
}

bool contains(const Subspace& s, const VecQ& v) {
  if (static_cast<int>(v.size()) != s.ambient)
    throw std::invalid_argument("vector length mismatch");
  if (vec_is_zero(v)) return true;
  if (s.dim() == 0) return false;
  return solve(from_cols(s.ambient, s.basis), v).has_value();
}

bool subspace_equal(const Subspace& s1, const Subspace& s2) {
  return s1.ambient == s2.ambient && s1.basis == s2.basis;
}

VecQ project(const Subspace& s, const VecQ& v) {
  if (static_cast<int>(v.size()) != s.ambient)
    throw std::invalid_argument("vector length mismatch");
  VecQ p(s.ambient, Rational(0));
  if (s.dim() == 0) return p;
  MatQ b = from_rows(s.ambient, s.basis);
  MatQ gram = mat_mul(b, b.transpose());
  VecQ rhs = mat_vec(b, v);
  auto c = solve(gram, rhs);
  if (!c) throw std::logic_error("gram system must be solvable");
  for (int j = 0; j < s.dim(); ++j)
    if ((*c)[j] != 0) p = vec_add(p, vec_scale((*c)[j], s.basis[j]));
  return p;
}

// Row echelon over Q(i); shared by rank and kernel.
struct GaussRref {
  std::vector<GaussQ> r;
  std::vector<int> pivot_cols;
  int rank = 0;
};

static GaussRref gauss_rref(int rows, int cols, std::vector<GaussQ> a) {
  auto at = [&](int i, int j) -> GaussQ& {
    return a[static_cast<std::size_t>(i) * cols + j];
  };
  GaussRref out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    GaussQ inv = gauss_inv(at(r, c));
    for (int j = c; j < cols; ++j) at(r, j) = inv * at(r, j);
    for (int i = 0; i < rows; ++i) {
      if (i == r || at(i, c).is_zero()) continue;
      GaussQ f = at(i, c);
      for (int j = c; j < cols; ++j) at(i, j) = at(i, j) - f * at(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.r = std::move(a);
  return out;
}

int rank_gauss(int rows, int cols, std::vector<GaussQ> a) {
  return gauss_rref(rows, cols, std::move(a)).rank;
}

std::vector<std::vector<GaussQ>> kernel_basis_gauss(int rows, int cols,
                                                    std::vector<GaussQ> a) {
  GaussRref f = gauss_rref(rows, cols, std::move(a));
  std::vector<bool> is_pivot(cols, false);
  for (int c : f.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<GaussQ>> out;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<GaussQ> v(cols);
    v[c] = GaussQ(Rational(1));
    for (int i = 0; i < f.rank; ++i) {
      GaussQ e = f.r[static_cast<std::size_t>(i) * cols + c];
      v[f.pivot_cols[i]] = GaussQ(Rational(0)) - e;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace kms
