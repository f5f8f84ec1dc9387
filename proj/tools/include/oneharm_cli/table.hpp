#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oneharm::cli {

using Cell = std::variant<double, long long, std::string>;

inline constexpr int schema_version = 1;

// One record per row; every CSV starts with a "# oneharm-csv schema=<name>/v<version>" line.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_row(std::vector<Cell> row);
  // Column index; throws a usage error when absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, std::size_t col) const;
};

// %.17g, so a double survives a text round trip.
std::string format_double(double x);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace oneharm::cli
