#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "srret/cli/config.hpp"

namespace srret::cli {

/// Numeric table with a fixed header; NaN marks masked cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// CSV: header row, '\n' line endings, %.17g floats, `nan` for masked cells.
void write_csv(std::ostream& os, const Table& table);

/// {"columns": [...], "rows": [[...], ...]}, with NaN as null.
nlohmann::json to_json(const Table& table);

std::string format_double(double v);

/// Writes `text` to `path`, or to stdout for "-". Throws IoError.
void write_text(const std::string& path, const std::string& text);

}  // namespace srret::cli
