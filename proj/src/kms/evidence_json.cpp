#include "kms/evidence_json.hpp"

#include <stdexcept>

namespace kms {

using nlohmann::json;

nlohmann::json budget_to_json(const Budget& b) {
  return json{{"samples", b.samples},
              {"smax", b.smax},
              {"depth", b.depth},
              {"seed", b.seed}};
}

Budget budget_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("budget: expected an object");
  Budget b;
  for (const auto& [key, val] : j.items()) {
    if (key == "samples") b.samples = val.get<int>();
    else if (key == "smax") b.smax = val.get<int>();
    else if (key == "depth") b.depth = val.get<int>();
    else if (key == "seed") b.seed = val.get<std::uint64_t>();
    else throw std::invalid_argument("budget: unknown key '" + key + "'");
  }
  if (b.samples < 0 || b.smax < 1 || b.depth < 1)
    throw std::invalid_argument("budget: out-of-range value");
  return b;
}

static json gauss_to_json(const GaussQ& g) {
  return json{{"re", rat_str(g.re)}, {"im", rat_str(g.im)}};
}

static GaussQ gauss_from_json(const json& j) {
  return GaussQ(rat_parse(j.at("re").get<std::string>()),
                rat_parse(j.at("im").get<std::string>()));
}

static json gauss_vec_to_json(const std::vector<GaussQ>& v) {
  json a = json::array();
  for (const auto& g : v) a.push_back(gauss_to_json(g));
  return a;
}

static std::vector<GaussQ> gauss_vec_from_json(const json& j) {
  std::vector<GaussQ> v;
  for (const auto& g : j) v.push_back(gauss_from_json(g));
  return v;
}

nlohmann::json evidence_to_json(const Evidence& e) {
  json j;
  if (const auto* w = std::get_if<EllipticityWitness>(&e)) {
    j["type"] = "ellipticity_witness";
    j["xi"] = vecq_to_json(w->xi);
    j["v"] = vecq_to_json(w->v);
  } else if (const auto* w = std::get_if<ComplexWitness>(&e)) {
    j["type"] = "complex_witness";
    j["xi"] = gauss_vec_to_json(w->xi);
    j["v"] = gauss_vec_to_json(w->v);
  } else if (const auto* c = std::get_if<Certificate>(&e)) {
    j["type"] = "certificate";
    j["w"] = vecq_to_json(c->w);
    j["s"] = c->s;
    json kb = json::array();
    for (const auto& v : c->kernel_basis) kb.push_back(vecq_to_json(v));
    j["kernel_basis"] = std::move(kb);
    json co = json::array();
    for (const auto& p : c->coords) co.push_back(poly_to_json(p));
    j["coords"] = std::move(co);
  } else if (const auto* w = std::get_if<RankDropWitness>(&e)) {
    j["type"] = "rank_drop";
    j["xi_lo"] = vecq_to_json(w->xi_lo);
    j["xi_hi"] = vecq_to_json(w->xi_hi);
    j["rank_lo"] = w->rank_lo;
    j["rank_hi"] = w->rank_hi;
  } else {
    const auto& kw = std::get<KernelWitness>(e);
    j["type"] = "kernel_witness";
    j["v"] = vecq_to_json(kw.v);
  }
  return j;
}

Evidence evidence_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ellipticity_witness")
    return EllipticityWitness{vecq_from_json(j.at("xi")),
                              vecq_from_json(j.at("v"))};
  if (type == "complex_witness")
    return ComplexWitness{gauss_vec_from_json(j.at("xi")),
                          gauss_vec_from_json(j.at("v"))};
  if (type == "certificate") {
    Certificate c;
    c.w = vecq_from_json(j.at("w"));
    c.s = j.at("s").get<int>();
    for (const auto& v : j.at("kernel_basis"))
      c.kernel_basis.push_back(vecq_from_json(v));
    for (const auto& p : j.at("coords")) c.coords.push_back(poly_from_json(p));
    return c;
  }
  if (type == "rank_drop")
    return RankDropWitness{
        vecq_from_json(j.at("xi_lo")), vecq_from_json(j.at("xi_hi")),
        j.at("rank_lo").get<int>(), j.at("rank_hi").get<int>()};
  if (type == "kernel_witness")
    return KernelWitness{vecq_from_json(j.at("v"))};
  throw std::invalid_argument("evidence: unknown type '" + type + "'");
}

nlohmann::json verdict_to_json(const Verdict& v) {
  json j;
  j["status"] = status_str(v.status);
  j["note"] = v.note;
  j["budget_used"] = json{{"samples_used", v.budget.samples_used},
                          {"smax_searched", v.budget.smax_searched},
                          {"depth_reached", v.budget.depth_reached},
                          {"boxes", v.budget.boxes}};
  if (v.evidence) j["evidence"] = evidence_to_json(*v.evidence);
  return j;
}

static Status status_from_str(const std::string& s) {
  if (s == "yes") return Status::CertifiedYes;
  if (s == "no") return Status::CertifiedNo;
  if (s == "unknown") return Status::Unknown;
  throw std::invalid_argument("verdict: unknown status '" + s + "'");
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.status = status_from_str(j.at("status").get<std::string>());
  v.note = j.value("note", "");
  if (j.contains("budget_used")) {
    const json& b = j.at("budget_used");
    v.budget.samples_used = b.value("samples_used", 0);
    v.budget.smax_searched = b.value("smax_searched", 0);
    v.budget.depth_reached = b.value("depth_reached", 0);
    v.budget.boxes = b.value("boxes", 0L);
  }
  if (j.contains("evidence")) v.evidence = evidence_from_json(j.at("evidence"));
  return v;
}

static CheckKind kind_from_str(const std::string& s) {
  if (s == "reduced_ellipticity") return CheckKind::ReducedEllipticity;
  if (s == "reduced_c_ellipticity") return CheckKind::ReducedCEllipticity;
  if (s == "reduced_cancellation") return CheckKind::ReducedCancellation;
  if (s == "full_cancellation") return CheckKind::FullCancellation;
  if (s == "partial_cancellation") return CheckKind::PartialCancellation;
  if (s == "cocancellation") return CheckKind::Cocancellation;
  if (s == "constant_rank") return CheckKind::ConstantRank;
  throw std::invalid_argument("evidence record: unknown check kind '" + s + "'");
}

nlohmann::json record_to_json(const EvidenceRecord& r) {
  json j;
  j["kind"] = check_kind_str(r.kind);
  if (r.a) j["A"] = partmap_to_json(*r.a);
  j["B"] = operator_to_json(r.b);
  if (r.t) j["T"] = partmap_to_json(*r.t);
  j["evidence"] = evidence_to_json(r.evidence);
  return j;
}

EvidenceRecord record_from_json(const json& j) {
  EvidenceRecord r;
  r.kind = kind_from_str(j.at("kind").get<std::string>());
  if (j.contains("A")) r.a = partmap_from_json(j.at("A"));
  r.b = operator_from_json(j.at("B"));
  if (j.contains("T")) r.t = partmap_from_json(j.at("T"));
  r.evidence = evidence_from_json(j.at("evidence"));
  return r;
}

EvidenceRecord make_record(CheckKind kind, const PartMap* a,
                           const HomOperator& b, const PartMap* t,
                           const Verdict& v) {
  if (!v.evidence)
    throw std::invalid_argument("cannot build an evidence record from a "
                                "verdict without evidence");
  EvidenceRecord r;
  r.kind = kind;
  if (a) r.a = *a;
  r.b = b;
  if (t) r.t = *t;
  r.evidence = *v.evidence;
  return r;
}

bool verify_record(const EvidenceRecord& r) {
  return verify_evidence(r.kind, r.evidence, r.a ? &*r.a : nullptr, r.b,
                         r.t ? &*r.t : nullptr);
}

nlohmann::json validity_to_json(const ValidityReport& rep, const PartMap& a,
                                const HomOperator& b) {
  json j;
  j["A"] = partmap_to_json(a);
  j["B"] = operator_to_json(b);
  j["criterion"] = rep.criterion;
  j["via"] = rep.via;
  j["lp"] = status_str(rep.lp);
  j["l1"] = status_str(rep.l1);
  auto check_json = [&](CheckKind kind, const Verdict& v) {
    json c = verdict_to_json(v);
    if (v.evidence)
      c["record"] = record_to_json(make_record(kind, &a, b, nullptr, v));
    return c;
  };
  j["c_ellipticity"] = check_json(CheckKind::ReducedCEllipticity,
                                  rep.c_ellipticity);
  j["ellipticity"] = check_json(CheckKind::ReducedEllipticity,
                                rep.ellipticity);
  j["cancellation"] = check_json(CheckKind::ReducedCancellation,
                                 rep.cancellation);
  return j;
}

}  // namespace kms
