#pragma once

#include "kms/rational.hpp"

#include <optional>

namespace kms {

// Dense rational matrix, row-major. Small sizes only (certificate-grade
// exactness matters here, not asymptotics).
struct MatQ {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static MatQ identity(int n);
  MatQ transpose() const;
  bool is_zero() const;
  bool operator==(const MatQ&) const = default;
};

MatQ mat_add(const MatQ& x, const MatQ& y);
MatQ mat_sub(const MatQ& x, const MatQ& y);
MatQ mat_mul(const MatQ& x, const MatQ& y);
MatQ mat_scale(const Rational& c, const MatQ& x);
VecQ mat_vec(const MatQ& x, const VecQ& v);

MatQ from_rows(int ambient, const std::vector<VecQ>& rows);
MatQ from_cols(int ambient, const std::vector<VecQ>& cols);

VecQ vec_add(const VecQ& x, const VecQ& y);
VecQ vec_sub(const VecQ& x, const VecQ& y);
VecQ vec_scale(const Rational& c, const VecQ& x);
Rational dot(const VecQ& x, const VecQ& y);
bool vec_is_zero(const VecQ& x);

// Reduced row echelon form. Pivot rule: columns scanned left to right, pivot
// is the first row (top to bottom) with a nonzero entry. Deterministic so
// that kernel bases and witnesses are reproducible byte for byte.
struct Rref {
  MatQ r;
  std::vector<int> pivot_cols;
  int rank = 0;
};
Rref rref(MatQ m);

int rank(const MatQ& m);

// Null space basis; one vector per free column, in ascending column order,
// with the free coordinate set to 1.
std::vector<VecQ> kernel_basis(const MatQ& m);

// Pivot columns of the original matrix: a basis of the column space.
std::vector<VecQ> image_basis(const MatQ& m);

// One solution of m x = b with all free variables set to 0, if consistent.
std::optional<VecQ> solve(const MatQ& m, const VecQ& b);

// Subspace of Q^ambient. The basis is always the nonzero rows of a reduced
// row echelon matrix, which makes the representation canonical: two equal
// subspaces have identical bases.
struct Subspace {
  int ambient = 0;
  std::vector<VecQ> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

Subspace span_of(int ambient, const std::vector<VecQ>& vecs);
Subspace full_space(int ambient);
Subspace zero_space(int ambient);
Subspace intersect(const Subspace& s1, const Subspace& s2);
Subspace orth_complement(const Subspace& s);
bool contains(const Subspace& s, const VecQ& v);
bool subspace_equal(const Subspace& s1, const Subspace& s2);

// Orthogonal projection onto s (standard inner product; Frobenius once
// matrices are vectorized).
VecQ project(const Subspace& s, const VecQ& v);

// Exact rank over Q(i).
int rank_gauss(int rows, int cols, std::vector<GaussQ> a);
// Kernel basis over Q(i), same free-column convention as kernel_basis.
std::vector<std::vector<GaussQ>> kernel_basis_gauss(int rows, int cols,
                                                    std::vector<GaussQ> a);

}  // namespace kms
