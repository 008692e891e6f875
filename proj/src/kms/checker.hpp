#pragma once

#include "kms/operator_model.hpp"

#include <optional>
#include <variant>

namespace kms {

// Search budgets. Exceeding a budget yields Unknown, never a wrong verdict.
struct Budget {
  int samples = 25;  // extra pseudo-random sample directions
  int smax = 3;      // certificate search tries |xi|^{2s} scalings up to this s
  int depth = 12;    // branch-and-bound subdivision depth per sphere face
  std::uint64_t seed = 1;
};

struct BudgetReport {
  int samples_used = 0;
  int smax_searched = 0;   // highest certificate scaling exponent tried
  int depth_reached = 0;   // deepest branch-and-bound box
  long boxes = 0;          // branch-and-bound boxes processed
};

enum class Status { CertifiedYes, CertifiedNo, Unknown };
const char* status_str(Status s);

// Real direction xi != 0 and nonzero v in ker A with B[xi] v = 0: disproves
// ellipticity on ker A.
struct EllipticityWitness {
  VecQ xi, v;
};

// Complex direction and kernel vector over Q(i): disproves C-ellipticity.
struct ComplexWitness {
  std::vector<GaussQ> xi, v;
};

// Nonzero w reachable as B[xi] v(xi) = |xi|^{2s} w with v(xi) valued in
// ker A (coordinates in kernel_basis): certifies w lies in every image
// B[xi](ker A), disproving cancellation.
struct Certificate {
  VecQ w;
  int s = 1;
  std::vector<VecQ> kernel_basis;
  std::vector<Poly> coords;  // one polynomial per kernel basis vector
};

// Two directions where the symbol has different rank: disproves constant rank.
struct RankDropWitness {
  VecQ xi_lo, xi_hi;
  int rank_lo = 0, rank_hi = 0;
};

// Nonzero common kernel vector of all coefficient matrices: disproves
// cocancellation.
struct KernelWitness {
  VecQ v;
};

using Evidence = std::variant<EllipticityWitness, ComplexWitness, Certificate,
                              RankDropWitness, KernelWitness>;

enum class CheckKind {
  ReducedEllipticity,
  ReducedCEllipticity,
  ReducedCancellation,
  FullCancellation,
  PartialCancellation,
  Cocancellation,
  ConstantRank,
};
const char* check_kind_str(CheckKind k);

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Evidence> evidence;
  std::string note;
  BudgetReport budget;
};

// Deterministic sample directions: all +-e_i, all e_i +- e_j combinations,
// then `budget.samples` seeded pseudo-random rational vectors with numerators
// and denominators bounded by 97.
std::vector<VecQ> sample_directions(int n, const Budget& budget);

// Is ker A[v]=0, B[xi] v = 0 for some real xi != 0 impossible? CertifiedYes
// via interval branch-and-bound on the Gram determinant of the restricted
// symbol over the unit sphere faces; CertifiedNo via an exact rank drop.
Verdict check_reduced_ellipticity(const PartMap& a, const HomOperator& b,
                                  const Budget& budget);

// Same question over C, decided exactly: the variety of the maximal minors
// of the restricted symbol is {0} iff no complex direction drops rank.
Verdict check_reduced_c_ellipticity(const PartMap& a, const HomOperator& b,
                                    const Budget& budget);

// Does the intersection of B[xi](ker A) over xi != 0 vanish? CertifiedYes
// when exact intersection of sampled images is zero (the true intersection
// is contained in any sampled one); CertifiedNo via a verified certificate.
Verdict check_reduced_cancellation(const PartMap& a, const HomOperator& b,
                                   const Budget& budget);

// Cancellation with the full space in place of ker A.
Verdict check_full_cancellation(const HomOperator& b, const Budget& budget);

// Intersection taken inside ker T: certifies whether any nonzero w in ker T
// survives in every image B[xi](ker A).
Verdict check_partial_cancellation(const PartMap& a, const HomOperator& b,
                                   const PartMap& t, const Budget& budget);

// Exact: the common kernel of all coefficient matrices B_alpha is trivial
// iff the adjoint-side intersection of symbol kernels is trivial. No
// sampling, no Unknown.
Verdict check_cocancellation(const HomOperator& b);

// Does rank B[xi] stay constant over xi != 0? Generic rank is computed
// exactly over the function field; minimal rank is certified by interval
// positivity of the sum of principal minors of the symbol Gram matrix.
Verdict check_constant_rank(const HomOperator& b, const Budget& budget);

// Exact re-derivation of a previously emitted piece of evidence. `a` and `t`
// may be null when the check kind does not involve them.
bool verify_evidence(CheckKind kind, const Evidence& ev, const PartMap* a,
                     const HomOperator& b, const PartMap* t);

// Aggregate result: validity of the inequality scale for a pair (A, B).
//   lp: valid for all p in (1, n)   <=> reduced ellipticity
//   l1: valid at p = 1              <=> reduced ellipticity + cancellation
// CertifiedYes C-ellipticity forces both (it implies both properties).
struct ValidityReport {
  Verdict c_ellipticity, ellipticity, cancellation;
  Status lp = Status::Unknown, l1 = Status::Unknown;
  std::string via;  // "c-elliptic" | "elliptic+cancelling" | "vacuous" |
                    // "counterexample" | "unknown"
  std::string criterion;
};

ValidityReport kms_validity(const PartMap& a, const HomOperator& b,
                            const Budget& budget);

}  // namespace kms
