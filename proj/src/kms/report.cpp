#include "kms/report.hpp"

#include "kms/evidence_json.hpp"

#include <cstdio>
#include <future>
#include <sstream>

namespace kms {

using nlohmann::json;

std::string table_cell_token(const ValidityReport& rep) {
  if (rep.l1 == Status::CertifiedYes)
    return rep.c_ellipticity.status == Status::CertifiedYes ? "yes(C)" : "yes";
  if (rep.lp == Status::CertifiedYes && rep.l1 == Status::CertifiedNo)
    return "p-only";
  if (rep.lp == Status::CertifiedNo) return "no";
  return "unknown";
}

Table build_table(int n, const Budget& budget) {
  Table t;
  t.n = n;
  t.budget = budget;
  std::vector<std::string> names = part_map_names();
  HomOperator curl = curl_op(n);
  struct Job {
    std::string row, col;
    std::future<ValidityReport> fut;
  };
  std::vector<Job> jobs;
  for (const std::string& rn : names)
    for (const std::string& cn : names) {
      PartMap a = part_map(rn, n);
      HomOperator b = postcompose(part_map(cn, n), curl);
      jobs.push_back(Job{rn, cn,
                         std::async(std::launch::async,
                                    [a = std::move(a), b = std::move(b),
                                     budget] { return kms_validity(a, b, budget); })});
    }
  for (auto& job : jobs) {
    TableCell cell;
    cell.row = job.row;
    cell.col = job.col;
    cell.report = job.fut.get();
    cell.token = table_cell_token(cell.report);
    t.cells.push_back(std::move(cell));
  }
  return t;
}

std::string render_table_markdown(const Table& t) {
  std::vector<std::string> names = part_map_names();
  std::size_t k = names.size();
  std::ostringstream os;
  os << "| A \\ B |";
  for (const auto& cn : names) os << " " << cn << "[curl] |";
  os << "\n|---|";
  for (std::size_t i = 0; i < k; ++i) os << "---|";
  os << "\n";
  for (std::size_t r = 0; r < k; ++r) {
    os << "| " << names[r] << " |";
    for (std::size_t c = 0; c < k; ++c)
      os << " " << t.cells[r * k + c].token << " |";
    os << "\n";
  }
  return os.str();
}

std::string render_table_csv(const Table& t) {
  std::ostringstream os;
  os << "A,S,token,lp,l1,via\n";
  for (const auto& cell : t.cells)
    os << cell.row << "," << cell.col << "," << cell.token << ","
       << status_str(cell.report.lp) << "," << status_str(cell.report.l1)
       << "," << cell.report.via << "\n";
  return os.str();
}

nlohmann::json table_to_json(const Table& t) {
  json cells = json::array();
  std::vector<std::string> names = part_map_names();
  HomOperator curl = curl_op(t.n);
  for (const auto& cell : t.cells) {
    PartMap a = part_map(cell.row, t.n);
    HomOperator b = postcompose(part_map(cell.col, t.n), curl);
    json c;
    c["row"] = cell.row;
    c["col"] = cell.col;
    c["token"] = cell.token;
    c["report"] = validity_to_json(cell.report, a, b);
    cells.push_back(std::move(c));
  }
  return json{{"n", t.n},
              {"budget", budget_to_json(t.budget)},
              {"cells", std::move(cells)}};
}

static std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string blowup_csv(const BlowupResult& r) {
  std::ostringstream os;
  os << "eps,R,N,lhs_norm,rhs_partmap_norm,rhs_B_norm,ratio\n";
  for (const auto& row : r.rows)
    os << fmt(row.eps) << "," << fmt(row.R) << "," << row.N << ","
       << fmt(row.lhs) << "," << fmt(row.rhs_part) << "," << fmt(row.rhs_b)
       << "," << fmt(row.ratio) << "\n";
  return os.str();
}

static json trend_to_json(const TrendFit& t) {
  return json{{"growth_total", t.growth_total},
              {"growth_per_decade", t.growth_per_decade},
              {"cube_fit_coeff", t.cube_fit_coeff},
              {"cube_max_factor", t.cube_max_factor},
              {"strictly_increasing", t.strictly_increasing}};
}

nlohmann::json blowup_to_json(const BlowupResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"eps", row.eps},
                        {"R", row.R},
                        {"N", row.N},
                        {"lhs_norm", row.lhs},
                        {"rhs_partmap_norm", row.rhs_part},
                        {"rhs_B_norm", row.rhs_b},
                        {"ratio", row.ratio},
                        {"continuum_lhs", row.cont_lhs},
                        {"continuum_rhs_B", row.cont_rhs_b},
                        {"continuum_ratio", row.cont_ratio}});
  return json{
      {"config",
       json{{"R", r.cfg.R},
            {"ratios", r.cfg.ratios},
            {"N", r.cfg.N},
            {"L_over_R", r.cfg.L_over_R},
            {"stencil_N", r.cfg.stencil_N}}},
      {"rows", std::move(rows)},
      {"sym_abs_max", r.sym_abs_max},
      {"stencil",
       json{{"n_coarse", r.stencil.n_coarse},
            {"n_fine", r.stencil.n_fine},
            {"err_coarse", r.stencil.err_coarse},
            {"err_fine", r.stencil.err_fine},
            {"order", r.stencil.order}}},
      {"grid_trend", trend_to_json(r.grid_trend)},
      {"continuum_trend", trend_to_json(r.continuum_trend)}};
}

std::string blowup_markdown(const BlowupResult& r) {
  std::ostringstream os;
  os << "| eps | R | N | lhs | rhs_A | rhs_B | ratio | continuum ratio |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : r.rows)
    os << "| " << fmt(row.eps) << " | " << fmt(row.R) << " | " << row.N
       << " | " << fmt(row.lhs) << " | " << fmt(row.rhs_part) << " | "
       << fmt(row.rhs_b) << " | " << fmt(row.ratio) << " | "
       << fmt(row.cont_ratio) << " |\n";
  os << "\n";
  os << "- sym P max abs: " << fmt(r.sym_abs_max) << "\n";
  os << "- stencil order (N=" << r.stencil.n_coarse << " vs "
     << r.stencil.n_fine << "): " << fmt(r.stencil.order) << "\n";
  os << "- grid ratio growth/decade: " << fmt(r.grid_trend.growth_per_decade)
     << ", strictly increasing: "
     << (r.grid_trend.strictly_increasing ? "yes" : "no") << "\n";
  os << "- continuum ratio growth/decade: "
     << fmt(r.continuum_trend.growth_per_decade) << ", strictly increasing: "
     << (r.continuum_trend.strictly_increasing ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace kms
