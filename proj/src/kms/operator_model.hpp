#pragma once

#include "kms/linalg.hpp"
#include "kms/poly.hpp"

#include <map>
#include <string>

#include "json.hpp"

namespace kms {

// Finite-dimensional real coefficient space. Matrix spaces carry their shape
// so part maps like sym/dev/tr can be constructed; rows==cols==0 otherwise.
struct SpaceDesc {
  std::string label;
  int dim = 0;
  int rows = 0, cols = 0;

  bool is_matrix() const { return rows > 0 && cols > 0; }
  bool operator==(const SpaceDesc&) const = default;
};

SpaceDesc matrix_space(int n);
SpaceDesc vector_space(int n);
SpaceDesc scalar_space();

// Linear map on the coefficient space ("part" of a field, e.g. sym, dev).
struct PartMap {
  std::string name;
  SpaceDesc domain, codomain;
  MatQ m;  // codomain.dim x domain.dim
};

// Homogeneous constant-coefficient differential operator of order k on R^n:
// B u = sum_{|alpha|=k} B_alpha d^alpha u. Zero coefficient matrices are not
// stored. The symbol is B[xi] = sum_alpha xi^alpha B_alpha.
using MultiIdx = std::vector<std::uint32_t>;

struct HomOperator {
  std::string name;
  int order = 1;
  int dim_n = 2;
  SpaceDesc domain, codomain;
  std::map<MultiIdx, MatQ> coeff;
};

// All multi-indices of the given total degree, in ascending lexicographic
// order; deterministic enumeration shared by solver and serializer.
std::vector<MultiIdx> multi_indices(int n, int deg);

// Entries of the symbol as polynomials in xi_0..xi_{n-1}.
struct SymbolMatrix {
  int rows = 0, cols = 0, nvars = 0;
  std::vector<Poly> e;

  Poly& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const Poly& at(int i, int j) const {
    return e[static_cast<std::size_t>(i) * cols + j];
  }
};

MatQ symbol_eval(const HomOperator& b, const VecQ& xi);
std::vector<GaussQ> symbol_eval_gauss(const HomOperator& b,
                                      const std::vector<GaussQ>& xi);
SymbolMatrix symbol_matrix(const HomOperator& b);

// Restriction of the domain to the span of `basis` (columns in domain
// coordinates); the restricted operator acts on span coordinates.
HomOperator restrict_op(const HomOperator& b, const std::vector<VecQ>& basis,
                        const std::string& label);

// S[B]: apply a part map after the operator.
HomOperator postcompose(const PartMap& s, const HomOperator& b);
// B[S .]: apply a part map to the argument first.
HomOperator precompose(const HomOperator& b, const PartMap& s);
// outer(inner(.)): orders add, coefficients convolve.
HomOperator compose_ops(const HomOperator& outer, const HomOperator& inner);
HomOperator add_ops(const HomOperator& a, const HomOperator& b);
HomOperator scale_op(const Rational& c, const HomOperator& a);
// Identify scalar fields with multiples of the identity matrix, turning a
// scalar-codomain operator into a matrix-codomain one.
HomOperator embed_scalar_codomain(const HomOperator& a, int n);

// First-order operator v -> A[v otimes xi] on vector fields; A must act on
// m x n matrices.
HomOperator gradient_operator(const PartMap& a, int n);

// Catalog. Part maps on n x n matrix fields:
//   id, transpose, sym, skew, tr, dev, devsym, skewtr (skew + trace part),
//   zero (the zero map; its kernel is everything).
PartMap part_map(const std::string& name, int n);
std::vector<std::string> part_map_names();

// matrix curl: n=3: P -> P * Anti(xi) with Anti(z)v = z x v; n=2: P ->
// P * (-xi_2, xi_1)^T.
HomOperator curl_op(int n);
// row-wise matrix divergence: P -> P xi.
HomOperator div_op(int n);
// second-order incompatibility operator on 3x3 fields:
// P -> Anti(xi) P Anti(xi)^T.
HomOperator inc_op();

// --- serialization (canonical, byte-stable) --------------------------------

nlohmann::json space_to_json(const SpaceDesc& s);
SpaceDesc space_from_json(const nlohmann::json& j);
nlohmann::json partmap_to_json(const PartMap& p);
PartMap partmap_from_json(const nlohmann::json& j);
nlohmann::json operator_to_json(const HomOperator& b);
HomOperator operator_from_json(const nlohmann::json& j);

nlohmann::json matq_to_json(const MatQ& m);
MatQ matq_from_json(const nlohmann::json& j);
nlohmann::json vecq_to_json(const VecQ& v);
VecQ vecq_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace kms
