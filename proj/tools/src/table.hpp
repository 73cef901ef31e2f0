#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace entprobe::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

struct Metadata {
  std::string version;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> flags;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Header row plus one line per row. Cells holding commas or quotes are quoted.
void write_csv(std::ostream& os, const Table& t);

/// {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]}.
void write_json(std::ostream& os, const Table& t, const Metadata& meta);

}  // namespace entprobe::cli
