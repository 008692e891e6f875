#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kms/checker.hpp"
#include "kms/dsl.hpp"
#include "kms/evidence_json.hpp"

#include <algorithm>

using namespace kms;

namespace {

HomOperator s_curl(const std::string& s) {
  return postcompose(part_map(s, 3), curl_op(3));
}

// Second-order operator on 3x3 fields whose restriction to multiples of the
// identity has symbol ((xi0^2 + xi1^2) zeta, xi2^2 zeta): the classic
// elliptic-and-cancelling-but-not-C-elliptic example.
HomOperator split_divdiv_op() {
  HomOperator b;
  b.name = "divdiv split";
  b.order = 2;
  b.dim_n = 3;
  b.domain = matrix_space(3);
  b.codomain = vector_space(2);
  auto add = [&](int i, int j, int row, int pi, int pj, const Rational& c) {
    MultiIdx al(3, 0);
    al[i] += 1;
    al[j] += 1;
    auto it = b.coeff.find(al);
    if (it == b.coeff.end()) {
      it = b.coeff.emplace(al, MatQ(2, 9)).first;
    }
    it->second.at(row, 3 * pi + pj) += c;
  };
  // Component 0: div Div P - d2 (div of row 2); component 1: d2 (div row 2).
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) add(i, j, 0, i, j, Rational(1));
  for (int j = 0; j < 3; ++j) {
    add(2, j, 0, 2, j, Rational(-1));
    add(2, j, 1, 2, j, Rational(1));
  }
  return b;
}

VecQ vec_identity3() {
  VecQ v(9);
  v[0] = v[4] = v[8] = 1;
  return v;
}

}  // namespace

TEST_CASE("sample directions are deterministic and nonzero") {
  Budget bud;
  bud.samples = 10;
  auto d1 = sample_directions(3, bud);
  auto d2 = sample_directions(3, bud);
  CHECK(d1 == d2);
  // 2n axis directions + 4*C(n,2) two-axis combinations + extras.
  CHECK(d1.size() == 6 + 12 + 10);
  for (const auto& v : d1) CHECK(!vec_is_zero(v));
  bud.seed = 2;
  CHECK(sample_directions(3, bud) != d1);
}

TEST_CASE("reduced ellipticity yes and no") {
  Budget bud;

  // Symmetric gradient in n=2 is elliptic on the whole space.
  auto grad2 = gradient_operator(part_map("devsym", 2), 2);
  auto z2 = zero_map(vector_space(2));
  auto yes = check_reduced_ellipticity(z2, grad2, bud);
  CHECK(yes.status == Status::CertifiedYes);
  CHECK(!yes.evidence.has_value());

  // curl on ker(skew) = symmetric fields is not elliptic: a witness exists
  // and re-verifies.
  auto no = check_reduced_ellipticity(part_map("skew", 3), curl_op(3), bud);
  REQUIRE(no.status == Status::CertifiedNo);
  REQUIRE(no.evidence.has_value());
  auto a = part_map("skew", 3);
  CHECK(verify_evidence(CheckKind::ReducedEllipticity, *no.evidence, &a,
                        curl_op(3), nullptr));
  // Tampering with the witness must break verification.  Bump an
  // off-diagonal entry: that always pushes v outside ker(skew), whereas a
  // diagonal bump can leave a still-valid witness when xi happens to be a
  // coordinate axis.
  auto tampered = std::get<EllipticityWitness>(*no.evidence);
  tampered.v[1] += 1;
  CHECK(!verify_evidence(CheckKind::ReducedEllipticity, Evidence{tampered}, &a,
                         curl_op(3), nullptr));
  auto wrong_dir = std::get<EllipticityWitness>(*no.evidence);
  for (auto& c : wrong_dir.xi) c = 0;
  CHECK(!verify_evidence(CheckKind::ReducedEllipticity, Evidence{wrong_dir}, &a,
                         curl_op(3), nullptr));

  // A domain larger than the codomain can never be elliptic.
  auto tall = check_reduced_ellipticity(zero_map(matrix_space(3)), div_op(3), bud);
  CHECK(tall.status == Status::CertifiedNo);
}

TEST_CASE("budget exhaustion yields unknown, never a verdict") {
  // Scalar operator with symbol rows (xi0, xi1 - xi0): elliptic, but the
  // Gram polynomial needs a few subdivisions to certify positivity.
  HomOperator b;
  b.name = "shear";
  b.order = 1;
  b.dim_n = 2;
  b.domain = scalar_space();
  b.codomain = vector_space(2);
  MatQ c0(2, 1), c1(2, 1);
  c0.at(0, 0) = 1;
  c0.at(1, 0) = -1;
  c1.at(1, 0) = 1;
  b.coeff[MultiIdx{1, 0}] = c0;
  b.coeff[MultiIdx{0, 1}] = c1;

  auto z = zero_map(scalar_space());
  Budget tiny;
  tiny.depth = 1;
  auto u = check_reduced_ellipticity(z, b, tiny);
  CHECK(u.status == Status::Unknown);
  CHECK(!u.evidence.has_value());

  Budget full;
  auto y = check_reduced_ellipticity(z, b, full);
  CHECK(y.status == Status::CertifiedYes);
  CHECK(y.budget.depth_reached > 1);
}

TEST_CASE("full cancellation of curl parts") {
  Budget bud;
  // sym curl and dev curl cancel; devsym curl does not.
  CHECK(check_full_cancellation(s_curl("sym"), bud).status ==
        Status::CertifiedYes);
  CHECK(check_full_cancellation(s_curl("dev"), bud).status ==
        Status::CertifiedYes);

  auto no = check_full_cancellation(s_curl("devsym"), bud);
  REQUIRE(no.status == Status::CertifiedNo);
  REQUIRE(no.evidence.has_value());
  const auto& cert = std::get<Certificate>(*no.evidence);
  CHECK(cert.s == 1);
  CHECK(verify_evidence(CheckKind::FullCancellation, *no.evidence, nullptr,
                        s_curl("devsym"), nullptr));

  // Tampered targets and tampered coordinates both fail.
  auto bad_w = cert;
  bad_w.w[0] += 1;
  CHECK(!verify_evidence(CheckKind::FullCancellation, Evidence{bad_w}, nullptr,
                         s_curl("devsym"), nullptr));
  auto bad_coord = cert;
  bad_coord.coords[0] = bad_coord.coords[0] + Poly::constant(
      bad_coord.coords[0].nvars(), Rational(1));
  CHECK(!verify_evidence(CheckKind::FullCancellation, Evidence{bad_coord},
                         nullptr, s_curl("devsym"), nullptr));
}

TEST_CASE("reduced cancellation counterexample pair") {
  // (sym, skew curl + tr curl): the L1 inequality fails; the intersection of
  // the images over ker(sym) contains the identity matrix.
  Budget bud;
  auto a = part_map("sym", 3);
  auto b = s_curl("skewtr");
  auto no = check_reduced_cancellation(a, b, bud);
  REQUIRE(no.status == Status::CertifiedNo);
  REQUIRE(no.evidence.has_value());
  const auto& cert = std::get<Certificate>(*no.evidence);
  CHECK(cert.w == vec_identity3());
  CHECK(cert.s == 1);
  CHECK(verify_evidence(CheckKind::ReducedCancellation, *no.evidence, &a, b,
                        nullptr));

  // The same operator on ker(dev) = multiples of the identity maps everything
  // to zero, so the reduced intersection is trivially zero.
  auto dev = part_map("dev", 3);
  CHECK(check_reduced_cancellation(dev, b, bud).status == Status::CertifiedYes);
}

TEST_CASE("incompatibility operator parts") {
  Budget bud;
  auto dev = part_map("dev", 3);
  auto inc = inc_op();
  for (const char* s : {"id", "dev", "sym", "devsym"}) {
    auto op = postcompose(part_map(s, 3), inc);
    auto v = check_reduced_c_ellipticity(dev, op, bud);
    CHECK(v.status == Status::CertifiedYes);
  }
  for (const char* s : {"skewtr", "tr"}) {
    auto op = postcompose(part_map(s, 3), inc);
    auto v = check_reduced_cancellation(dev, op, bud);
    REQUIRE(v.status == Status::CertifiedNo);
    REQUIRE(v.evidence.has_value());
    const auto& cert = std::get<Certificate>(*v.evidence);
    // Degree-0 certificate: constant preimage coordinates (order 2 at s=1).
    CHECK(cert.s == 1);
    for (const auto& c : cert.coords) CHECK(c.total_degree() <= 0);
    CHECK(verify_evidence(CheckKind::ReducedCancellation, *v.evidence, &dev,
                          op, nullptr));
  }
}

TEST_CASE("elliptic and cancelling but not c-elliptic") {
  Budget bud;
  auto dev = part_map("dev", 3);
  auto b = split_divdiv_op();

  CHECK(check_reduced_ellipticity(dev, b, bud).status == Status::CertifiedYes);
  CHECK(check_reduced_cancellation(dev, b, bud).status == Status::CertifiedYes);

  auto ce = check_reduced_c_ellipticity(dev, b, bud);
  REQUIRE(ce.status == Status::CertifiedNo);
  REQUIRE(ce.evidence.has_value());
  const auto& w = std::get<ComplexWitness>(*ce.evidence);
  // The witness direction must be genuinely complex: xi0^2 + xi1^2 = 0 and
  // xi2 = 0 have no real nonzero solution.
  bool has_imag = false;
  for (const auto& z : w.xi) has_imag = has_imag || z.im != 0;
  CHECK(has_imag);
  CHECK(verify_evidence(CheckKind::ReducedCEllipticity, *ce.evidence, &dev, b,
                        nullptr));

  auto bad = w;
  bad.v[0].re += 1;
  CHECK(!verify_evidence(CheckKind::ReducedCEllipticity, Evidence{bad}, &dev,
                         b, nullptr));
}

TEST_CASE("two dimensional checks") {
  Budget bud;
  // devsym gradient: elliptic but not C-elliptic (the 2d dichotomy operator).
  auto grad2 = gradient_operator(part_map("devsym", 2), 2);
  auto z2 = zero_map(vector_space(2));
  CHECK(check_reduced_ellipticity(z2, grad2, bud).status ==
        Status::CertifiedYes);
  auto ce = check_reduced_c_ellipticity(z2, grad2, bud);
  REQUIRE(ce.status == Status::CertifiedNo);
  REQUIRE(ce.evidence.has_value());
  CHECK(verify_evidence(CheckKind::ReducedCEllipticity, *ce.evidence, &z2,
                        grad2, nullptr));

  // (sym, curl) in n=2 is reduced C-elliptic.
  auto v = check_reduced_c_ellipticity(part_map("sym", 2), curl_op(2), bud);
  CHECK(v.status == Status::CertifiedYes);
}

TEST_CASE("partial cancellation") {
  Budget bud;
  auto dev = part_map("dev", 3);
  auto op = postcompose(part_map("skewtr", 3), inc_op());
  // The reduced intersection is the line through the identity. Inside
  // ker(tr) (trace-free targets) nothing survives; inside ker(dev) the
  // identity itself does.
  auto tr = part_map("tr", 3);
  CHECK(check_partial_cancellation(dev, op, tr, bud).status ==
        Status::CertifiedYes);
  auto no = check_partial_cancellation(dev, op, dev, bud);
  REQUIRE(no.status == Status::CertifiedNo);
  REQUIRE(no.evidence.has_value());
  const auto& cert = std::get<Certificate>(*no.evidence);
  CHECK(cert.w == vec_identity3());
  CHECK(verify_evidence(CheckKind::PartialCancellation, *no.evidence, &dev, op,
                        &tr) == false);  // wrong constraint map rejects
  CHECK(verify_evidence(CheckKind::PartialCancellation, *no.evidence, &dev, op,
                        &dev));
}

TEST_CASE("cocancellation is exact") {
  auto divv = check_cocancellation(div_op(3));
  CHECK(divv.status == Status::CertifiedYes);
  CHECK(divv.budget.samples_used == 0);
  CHECK(check_cocancellation(curl_op(3)).status == Status::CertifiedYes);

  // An operator that never differentiates the second component: its
  // coefficient matrices share a kernel vector.
  HomOperator b;
  b.name = "first only";
  b.order = 1;
  b.dim_n = 2;
  b.domain = vector_space(2);
  b.codomain = scalar_space();
  MatQ c(1, 2);
  c.at(0, 0) = 1;
  b.coeff[MultiIdx{1, 0}] = c;
  auto no = check_cocancellation(b);
  REQUIRE(no.status == Status::CertifiedNo);
  const auto& kw = std::get<KernelWitness>(*no.evidence);
  CHECK(kw.v == VecQ{Rational(0), Rational(1)});
  CHECK(verify_evidence(CheckKind::Cocancellation, *no.evidence, nullptr, b,
                        nullptr));
}

TEST_CASE("constant rank") {
  Budget bud;
  auto yes = check_constant_rank(curl_op(3), bud);
  CHECK(yes.status == Status::CertifiedYes);

  // Symbol (xi0, xi0): rank 1 generically but 0 at xi = e1.
  HomOperator b;
  b.name = "degenerate";
  b.order = 1;
  b.dim_n = 2;
  b.domain = scalar_space();
  b.codomain = vector_space(2);
  MatQ c(2, 1);
  c.at(0, 0) = 1;
  c.at(1, 0) = 1;
  b.coeff[MultiIdx{1, 0}] = c;
  auto no = check_constant_rank(b, bud);
  REQUIRE(no.status == Status::CertifiedNo);
  const auto& rd = std::get<RankDropWitness>(*no.evidence);
  CHECK(rd.rank_hi == 1);
  CHECK(rd.rank_lo == 0);
  CHECK(verify_evidence(CheckKind::ConstantRank, *no.evidence, nullptr, b,
                        nullptr));
  auto bad = rd;
  bad.rank_lo = 1;
  CHECK(!verify_evidence(CheckKind::ConstantRank, Evidence{bad}, nullptr, b,
                         nullptr));
}

TEST_CASE("validity aggregation") {
  Budget bud;

  // C-elliptic cell with a nontrivial reduced kernel: everything follows
  // from one certificate.  (A = id has r = 0 and reports via = "vacuous",
  // covered below.)
  auto vid = kms_validity(part_map("sym", 3), s_curl("id"), bud);
  CHECK(vid.via == "c-elliptic");
  CHECK(vid.lp == Status::CertifiedYes);
  CHECK(vid.l1 == Status::CertifiedYes);
  CHECK(vid.ellipticity.note.find("implied") != std::string::npos);

  // Counterexample cell: Lp holds, L1 fails.
  auto vsym = kms_validity(part_map("sym", 3), s_curl("skewtr"), bud);
  CHECK(vsym.via == "counterexample");
  CHECK(vsym.lp == Status::CertifiedYes);
  CHECK(vsym.l1 == Status::CertifiedNo);

  // Valid at L1 without C-ellipticity.
  auto vskewtr = kms_validity(part_map("skewtr", 3), s_curl("id"), bud);
  CHECK(vskewtr.via == "elliptic+cancelling");
  CHECK(vskewtr.l1 == Status::CertifiedYes);
  CHECK(vskewtr.c_ellipticity.status == Status::CertifiedNo);

  // Not even Lp.
  auto vskew = kms_validity(part_map("skew", 3), s_curl("id"), bud);
  CHECK(vskew.lp == Status::CertifiedNo);
  CHECK(vskew.l1 == Status::CertifiedNo);

  // ker A = 0: vacuous.
  auto vzero = kms_validity(part_map("id", 3), curl_op(3), bud);
  CHECK(vzero.via == "vacuous");

  CHECK(vid.criterion.find("p=1") != std::string::npos);
}

TEST_CASE("verdicts are byte deterministic") {
  Budget bud;
  auto a = part_map("sym", 3);
  auto b = s_curl("skewtr");
  auto v1 = check_reduced_cancellation(a, b, bud);
  auto v2 = check_reduced_cancellation(a, b, bud);
  CHECK(verdict_to_json(v1).dump() == verdict_to_json(v2).dump());

  auto ce1 = check_reduced_c_ellipticity(zero_map(vector_space(2)),
                                         gradient_operator(part_map("devsym", 2), 2),
                                         bud);
  auto ce2 = check_reduced_c_ellipticity(zero_map(vector_space(2)),
                                         gradient_operator(part_map("devsym", 2), 2),
                                         bud);
  CHECK(verdict_to_json(ce1).dump() == verdict_to_json(ce2).dump());
}

TEST_CASE("evidence records round trip and verify") {
  Budget bud;
  auto a = part_map("sym", 3);
  auto b = s_curl("skewtr");
  auto v = check_reduced_cancellation(a, b, bud);
  REQUIRE(v.evidence.has_value());
  auto rec = make_record(CheckKind::ReducedCancellation, &a, b, nullptr, v);
  CHECK(verify_record(rec));

  auto j = record_to_json(rec);
  auto back = record_from_json(j);
  CHECK(record_to_json(back).dump() == j.dump());
  CHECK(verify_record(back));

  // Corrupt the serialized target vector: re-verification must fail.
  auto corrupt = j;
  corrupt["evidence"]["w"][0] = "17";
  CHECK(!verify_record(record_from_json(corrupt)));
}

TEST_CASE("n=2 equivalence of c-ellipticity with elliptic plus cancelling") {
  // For first-order operators in two variables the three-way relationship
  // collapses: elliptic and cancelling together are equivalent to C-elliptic.
  Budget bud;
  for (const auto& name : part_map_names()) {
    if (name == "zero") continue;
    auto a = part_map(name, 2);
    auto b = curl_op(2);
    auto ce = check_reduced_c_ellipticity(a, b, bud);
    auto ell = check_reduced_ellipticity(a, b, bud);
    auto can = check_reduced_cancellation(a, b, bud);
    REQUIRE(ce.status != Status::Unknown);
    REQUIRE(ell.status != Status::Unknown);
    REQUIRE(can.status != Status::Unknown);
    bool both = ell.status == Status::CertifiedYes &&
                can.status == Status::CertifiedYes;
    CHECK((ce.status == Status::CertifiedYes) == both);
  }
}
