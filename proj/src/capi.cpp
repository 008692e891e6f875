#include "kms/kms.h"

#include "kms/dsl.hpp"
#include "kms/evidence_json.hpp"
#include "kms/report.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <stdexcept>

using nlohmann::json;

struct kms_partmap {
  kms::PartMap p;
};
struct kms_operator {
  kms::HomOperator b;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

// Distinguishes parse errors (expression/JSON syntax) from shape errors.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run(char** err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    set_out(err, e.what());
    return KMS_EPARSE;
  } catch (const BudgetError& e) {
    set_out(err, e.what());
    return KMS_EBUDGET;
  } catch (const json::exception& e) {
    set_out(err, e.what());
    return KMS_EPARSE;
  } catch (const std::invalid_argument& e) {
    set_out(err, e.what());
    return KMS_EINVAL;
  } catch (const std::bad_alloc&) {
    set_out(err, "out of memory");
    return KMS_EINTERNAL;
  } catch (const std::exception& e) {
    set_out(err, e.what());
    return KMS_EINTERNAL;
  }
}

json parse_json(const char* text, const char* what) {
  if (!text) throw std::invalid_argument(std::string(what) + " is null");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

kms::Budget budget_from_text(const char* budget_json) {
  if (!budget_json) return kms::Budget{};
  json j = parse_json(budget_json, "budget");
  try {
    return kms::budget_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw BudgetError(e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* kms_version(void) { return "1.0.0"; }

void kms_free_string(char* s) { std::free(s); }
void kms_partmap_free(kms_partmap_t* p) { delete p; }
void kms_operator_free(kms_operator_t* b) { delete b; }

int kms_parse_partmap(const char* text, int n, kms_partmap_t** out,
                      char** err) {
  return run(err, [&] {
    if (!text || !out) throw std::invalid_argument("null argument");
    try {
      *out = new kms_partmap{kms::parse_partmap(text, n)};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return KMS_OK;
  });
}

int kms_parse_operator(const char* text, int n, kms_operator_t** out,
                       char** err) {
  return run(err, [&] {
    if (!text || !out) throw std::invalid_argument("null argument");
    try {
      *out = new kms_operator{kms::parse_operator(text, n)};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return KMS_OK;
  });
}

int kms_partmap_from_json(const char* json_text, kms_partmap_t** out,
                          char** err) {
  return run(err, [&] {
    if (!out) throw std::invalid_argument("null argument");
    *out = new kms_partmap{kms::partmap_from_json(
        parse_json(json_text, "part map"))};
    return KMS_OK;
  });
}

int kms_operator_from_json(const char* json_text, kms_operator_t** out,
                           char** err) {
  return run(err, [&] {
    if (!out) throw std::invalid_argument("null argument");
    *out = new kms_operator{kms::operator_from_json(
        parse_json(json_text, "operator"))};
    return KMS_OK;
  });
}

int kms_partmap_to_json(const kms_partmap_t* p, char** out) {
  return run(nullptr, [&] {
    if (!p || !out) throw std::invalid_argument("null argument");
    set_out(out, dump(kms::partmap_to_json(p->p)));
    return KMS_OK;
  });
}

int kms_operator_to_json(const kms_operator_t* b, char** out) {
  return run(nullptr, [&] {
    if (!b || !out) throw std::invalid_argument("null argument");
    set_out(out, dump(kms::operator_to_json(b->b)));
    return KMS_OK;
  });
}

int kms_check(const char* check, const kms_partmap_t* a,
              const kms_operator_t* b, const kms_partmap_t* t,
              const char* budget_json, char** report_json, char** err) {
  return run(err, [&] {
    if (!b) throw std::invalid_argument("operator B is required");
    std::string name = check ? check : "validity";
    kms::Budget budget = budget_from_text(budget_json);
    // An all-zero part map means "kernel is everything"; retarget it to the
    // operator domain so `zero` works for operators on any space.
    kms::PartMap azero;
    const kms::PartMap* ap = a ? &a->p : nullptr;
    if (ap && ap->m.is_zero() && !(ap->domain == b->b.domain)) {
      azero = kms::zero_map(b->b.domain);
      ap = &azero;
    }
    json out;
    out["check"] = name;
    if (name == "validity") {
      if (!ap) throw std::invalid_argument("part map A is required");
      kms::ValidityReport rep = kms::kms_validity(*ap, b->b, budget);
      out.update(kms::validity_to_json(rep, *ap, b->b));
      set_out(report_json, dump(out));
      return KMS_OK;
    }
    kms::CheckKind kind;
    kms::Verdict v;
    const kms::PartMap* tp = t ? &t->p : nullptr;
    auto need_a = [&] {
      if (!ap) throw std::invalid_argument("part map A is required");
    };
    if (name == "reduced_ellipticity") {
      need_a();
      kind = kms::CheckKind::ReducedEllipticity;
      v = kms::check_reduced_ellipticity(*ap, b->b, budget);
    } else if (name == "reduced_c_ellipticity") {
      need_a();
      kind = kms::CheckKind::ReducedCEllipticity;
      v = kms::check_reduced_c_ellipticity(*ap, b->b, budget);
    } else if (name == "reduced_cancellation") {
      need_a();
      kind = kms::CheckKind::ReducedCancellation;
      v = kms::check_reduced_cancellation(*ap, b->b, budget);
    } else if (name == "full_cancellation") {
      kind = kms::CheckKind::FullCancellation;
      ap = nullptr;
      v = kms::check_full_cancellation(b->b, budget);
    } else if (name == "partial_cancellation") {
      need_a();
      if (!t)
        throw std::invalid_argument(
            "part map T is required for partial_cancellation");
      kind = kms::CheckKind::PartialCancellation;
      v = kms::check_partial_cancellation(*ap, b->b, t->p, budget);
    } else if (name == "cocancellation") {
      kind = kms::CheckKind::Cocancellation;
      ap = nullptr;
      v = kms::check_cocancellation(b->b);
    } else if (name == "constant_rank") {
      kind = kms::CheckKind::ConstantRank;
      ap = nullptr;
      v = kms::check_constant_rank(b->b, budget);
    } else {
      throw std::invalid_argument("unknown check '" + name + "'");
    }
    if (ap) out["A"] = kms::partmap_to_json(*ap);
    out["B"] = kms::operator_to_json(b->b);
    if (t) out["T"] = kms::partmap_to_json(t->p);
    out["verdict"] = kms::verdict_to_json(v);
    if (v.evidence)
      out["record"] = kms::record_to_json(
          kms::make_record(kind, ap, b->b, tp, v));
    set_out(report_json, dump(out));
    return KMS_OK;
  });
}

int kms_table(int n, const char* budget_json, const char* format, char** out,
              char** err) {
  return run(err, [&] {
    if (n != 3)
      throw std::invalid_argument(
          "the survey applies part maps to the matrix curl, which needs n=3");
    kms::Budget budget = budget_from_text(budget_json);
    kms::Table t = kms::build_table(n, budget);
    std::string f = format ? format : "json";
    if (f == "json") set_out(out, dump(kms::table_to_json(t)));
    else if (f == "md") set_out(out, kms::render_table_markdown(t));
    else if (f == "csv") set_out(out, kms::render_table_csv(t));
    else throw std::invalid_argument("unknown format '" + f + "'");
    return KMS_OK;
  });
}

int kms_blowup(const char* config_json, const char* format, char** out,
               char** err) {
  return run(err, [&] {
    kms::BlowupConfig cfg;
    if (config_json) {
      json j = parse_json(config_json, "config");
      for (const auto& [key, val] : j.items()) {
        if (key == "R") cfg.R = val.get<double>();
        else if (key == "ratios") cfg.ratios = val.get<std::vector<double>>();
        else if (key == "N") cfg.N = val.get<int>();
        else if (key == "L_over_R") cfg.L_over_R = val.get<double>();
        else if (key == "stencil_N") cfg.stencil_N = val.get<int>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
    if (cfg.N < 8 || cfg.N % 2 != 0)
      throw std::invalid_argument("config: N must be even and at least 8");
    if (cfg.R <= 0 || cfg.L_over_R <= 1)
      throw std::invalid_argument("config: need R > 0 and L_over_R > 1");
    for (double r : cfg.ratios)
      if (r <= 1) throw std::invalid_argument("config: ratios must exceed 1");
    kms::BlowupResult res = kms::blowup_experiment(cfg);
    std::string f = format ? format : "json";
    if (f == "json") set_out(out, dump(kms::blowup_to_json(res)));
    else if (f == "md") set_out(out, kms::blowup_markdown(res));
    else if (f == "csv") set_out(out, kms::blowup_csv(res));
    else throw std::invalid_argument("unknown format '" + f + "'");
    return KMS_OK;
  });
}

int kms_verify(const char* evidence_json, int* count_out, char** err) {
  return run(err, [&] {
    json doc = parse_json(evidence_json, "evidence");
    std::vector<json> records;
    std::function<void(const json&)> walk = [&](const json& j) {
      if (j.is_object()) {
        if (j.contains("kind") && j.contains("B") && j.contains("evidence")) {
          records.push_back(j);
          return;
        }
        for (const auto& [key, val] : j.items()) walk(val);
      } else if (j.is_array()) {
        for (const auto& item : j) walk(item);
      }
    };
    walk(doc);
    if (count_out) *count_out = static_cast<int>(records.size());
    if (records.empty())
      throw std::invalid_argument("no evidence records found");
    for (std::size_t i = 0; i < records.size(); ++i) {
      kms::EvidenceRecord r = kms::record_from_json(records[i]);
      if (!kms::verify_record(r)) {
        set_out(err, "record " + std::to_string(i) + " (" +
                         std::string(kms::check_kind_str(r.kind)) + " on " +
                         r.b.name + "): evidence identity does not hold");
        return KMS_EVERIFY;
      }
    }
    return KMS_OK;
  });
}

}  // extern "C"
