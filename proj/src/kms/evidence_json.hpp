#pragma once

#include "kms/checker.hpp"

#include "json.hpp"

namespace kms {

nlohmann::json budget_to_json(const Budget& b);
Budget budget_from_json(const nlohmann::json& j);

nlohmann::json evidence_to_json(const Evidence& e);
Evidence evidence_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

// Self-contained record: the evidence together with the check kind and the
// full objects it refers to, so it can be re-verified with no other input.
struct EvidenceRecord {
  CheckKind kind = CheckKind::ReducedEllipticity;
  std::optional<PartMap> a;
  HomOperator b;
  std::optional<PartMap> t;
  Evidence evidence;
};

nlohmann::json record_to_json(const EvidenceRecord& r);
EvidenceRecord record_from_json(const nlohmann::json& j);

// Build a record from a check's inputs and verdict; requires the verdict to
// carry evidence.
EvidenceRecord make_record(CheckKind kind, const PartMap* a,
                           const HomOperator& b, const PartMap* t,
                           const Verdict& v);

bool verify_record(const EvidenceRecord& r);

nlohmann::json validity_to_json(const ValidityReport& rep, const PartMap& a,
                                const HomOperator& b);

}  // namespace kms
