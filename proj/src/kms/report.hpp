#pragma once

#include "kms/checker.hpp"
#include "kms/numerics.hpp"

#include "json.hpp"

namespace kms {

// Validity survey: rows are part maps A, columns are part maps S with
// B = S[curl]; each cell classifies the (A, S[curl]) pair.
struct TableCell {
  std::string row, col;
  std::string token;  // yes(C) | yes | p-only | no | unknown
  ValidityReport report;
};

struct Table {
  int n = 3;
  Budget budget;
  std::vector<TableCell> cells;  // row-major in part_map_names() order
};

// Cells are evaluated concurrently; the result is assembled in row-major
// order and is byte-identical for a fixed seed regardless of parallelism.
Table build_table(int n, const Budget& budget);

std::string table_cell_token(const ValidityReport& rep);

std::string render_table_markdown(const Table& t);
std::string render_table_csv(const Table& t);
nlohmann::json table_to_json(const Table& t);

std::string blowup_csv(const BlowupResult& r);
std::string blowup_markdown(const BlowupResult& r);
nlohmann::json blowup_to_json(const BlowupResult& r);

}  // namespace kms
