#include "kms/kms.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Exit codes: 0 success, 2 parse/usage error, 3 Unknown verdict with
// --strict, 4 verification failure, 1 internal error.
int exit_code(int rc) {
  switch (rc) {
    case KMS_OK: return 0;
    case KMS_EPARSE:
    case KMS_EINVAL:
    case KMS_EBUDGET: return 2;
    case KMS_EVERIFY: return 4;
    default: return 1;
  }
}

[[noreturn]] void die(int rc, char* err) {
  std::fprintf(stderr, "error: %s\n", err ? err : "unknown failure");
  kms_free_string(err);
  std::exit(exit_code(rc));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "@file.json" loads JSON; anything else parses as an expression.
kms_partmap_t* load_partmap(const std::string& text, int n) {
  kms_partmap_t* p = nullptr;
  char* err = nullptr;
  int rc = text.rfind('@', 0) == 0
               ? kms_partmap_from_json(read_input(text.substr(1)).c_str(), &p,
                                       &err)
               : kms_parse_partmap(text.c_str(), n, &p, &err);
  if (rc != KMS_OK) die(rc, err);
  return p;
}

kms_operator_t* load_operator(const std::string& text, int n) {
  kms_operator_t* b = nullptr;
  char* err = nullptr;
  int rc = text.rfind('@', 0) == 0
               ? kms_operator_from_json(read_input(text.substr(1)).c_str(), &b,
                                        &err)
               : kms_parse_operator(text.c_str(), n, &b, &err);
  if (rc != KMS_OK) die(rc, err);
  return b;
}

bool has_unknown(const std::string& report) {
  nlohmann::json j = nlohmann::json::parse(report, nullptr, false);
  if (j.is_discarded()) return false;
  bool found = false;
  std::function<void(const nlohmann::json&)> walk =
      [&](const nlohmann::json& x) {
        if (x.is_object()) {
          for (const auto& [key, val] : x.items()) {
            if ((key == "status" || key == "lp" || key == "l1") &&
                val.is_string() && val.get<std::string>() == "unknown")
              found = true;
            walk(val);
          }
        } else if (x.is_array()) {
          for (const auto& item : x) walk(item);
        }
      };
  walk(j);
  return found;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified checker for limiting Korn-Maxwell-Sobolev "
               "inequalities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  int samples = 25, smax = 3, depth = 12;
  std::uint64_t seed = 1;
  if (const char* env = std::getenv("KMS_SEED")) seed = std::strtoull(env, nullptr, 10);
  bool strict = false;
  app.add_option("--format", format, "output format: json, md, csv")
      ->check(CLI::IsMember({"json", "md", "csv"}));
  app.add_option("--samples", samples, "extra pseudo-random sample directions");
  app.add_option("--smax", smax, "certificate search degree budget");
  app.add_option("--depth", depth, "branch-and-bound depth budget");
  app.add_option("--seed", seed, "sampling seed (default: KMS_SEED or 1)");
  app.add_flag("--strict", strict, "exit 3 when any verdict is Unknown");

  auto budget_json = [&] {
    nlohmann::json j{{"samples", samples},
                     {"smax", smax},
                     {"depth", depth},
                     {"seed", seed}};
    return j.dump();
  };

  std::string a_text, b_text, t_text, check_name = "validity";
  int n = 3;
  auto* cmd_check = app.add_subcommand(
      "check", "run one check or the full validity classification");
  cmd_check->add_option("--A", a_text, "part map expression or @file.json");
  cmd_check->add_option("--B", b_text, "operator expression or @file.json")
      ->required();
  cmd_check->add_option("--T", t_text,
                        "constraint part map (partial cancellation)");
  cmd_check->add_option("--n", n, "space dimension")->check(CLI::Range(2, 9));
  cmd_check->add_option(
      "--check", check_name,
      "validity | reduced_ellipticity | reduced_c_ellipticity | "
      "reduced_cancellation | full_cancellation | partial_cancellation | "
      "cocancellation | constant_rank");

  int table_n = 3;
  auto* cmd_table =
      app.add_subcommand("table", "validity survey of all (A, S[curl]) pairs");
  cmd_table->add_option("--n", table_n, "space dimension")
      ->check(CLI::IsMember({3}));

  double blow_R = 1.0, blow_lr = 4.0;
  int blow_N = 96, blow_stencil = 64;
  std::vector<double> blow_ratios;
  auto* cmd_blowup = app.add_subcommand(
      "blowup", "counterexample family experiment (grid and quadrature)");
  cmd_blowup->add_option("--R", blow_R, "cutoff radius");
  cmd_blowup->add_option("--N", blow_N, "cells per axis");
  cmd_blowup->add_option("--ratio", blow_ratios,
                         "R/eps values (repeatable; default 1e2..1e5)");
  cmd_blowup->add_option("--L-over-R", blow_lr, "box half-width over R");
  cmd_blowup->add_option("--stencil-N", blow_stencil,
                         "coarse grid for the convergence-order measurement");

  std::string verify_path;
  auto* cmd_verify = app.add_subcommand(
      "verify", "re-check all evidence records in a JSON document");
  cmd_verify->add_option("file", verify_path, "JSON file ('-' for stdin)")
      ->required();

  std::string dump_a, dump_b;
  int dump_n = 3;
  auto* cmd_dump = app.add_subcommand(
      "dump-operator", "print the canonical JSON of an expression");
  cmd_dump->add_option("--A", dump_a, "part map expression");
  cmd_dump->add_option("--B", dump_b, "operator expression");
  cmd_dump->add_option("--n", dump_n, "space dimension")
      ->check(CLI::Range(2, 9));

  CLI11_PARSE(app, argc, argv);

  char* out = nullptr;
  char* err = nullptr;
  int rc = KMS_OK;

  if (cmd_check->parsed()) {
    kms_partmap_t* a = a_text.empty() ? nullptr : load_partmap(a_text, n);
    kms_operator_t* b = load_operator(b_text, n);
    kms_partmap_t* t = t_text.empty() ? nullptr : load_partmap(t_text, n);
    rc = kms_check(check_name.c_str(), a, b, t, budget_json().c_str(), &out,
                   &err);
    kms_partmap_free(a);
    kms_operator_free(b);
    kms_partmap_free(t);
  } else if (cmd_table->parsed()) {
    rc = kms_table(table_n, budget_json().c_str(), format.c_str(), &out, &err);
  } else if (cmd_blowup->parsed()) {
    nlohmann::json cfg{{"R", blow_R},
                       {"N", blow_N},
                       {"L_over_R", blow_lr},
                       {"stencil_N", blow_stencil}};
    if (!blow_ratios.empty()) cfg["ratios"] = blow_ratios;
    rc = kms_blowup(cfg.dump().c_str(), format.c_str(), &out, &err);
  } else if (cmd_verify->parsed()) {
    int count = 0;
    rc = kms_verify(read_input(verify_path).c_str(), &count, &err);
    if (rc == KMS_OK) {
      std::printf("verified %d evidence record%s\n", count,
                  count == 1 ? "" : "s");
      return 0;
    }
  } else if (cmd_dump->parsed()) {
    if (dump_a.empty() == dump_b.empty()) {
      std::fprintf(stderr, "error: pass exactly one of --A or --B\n");
      return 2;
    }
    if (!dump_a.empty()) {
      kms_partmap_t* a = load_partmap(dump_a, dump_n);
      rc = kms_partmap_to_json(a, &out);
      kms_partmap_free(a);
    } else {
      kms_operator_t* b = load_operator(dump_b, dump_n);
      rc = kms_operator_to_json(b, &out);
      kms_operator_free(b);
    }
  }

  if (rc != KMS_OK) die(rc, err);
  if (out) {
    std::fputs(out, stdout);
    bool unknown = strict && has_unknown(out);
    kms_free_string(out);
    if (unknown) return 3;
  }
  return 0;
}
