#include "oneharm_cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "oneharm/error.hpp"

namespace oneharm::cli {

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == columns.size(), ErrorKind::validation, "row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& col) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == col) return i;
  fail(ErrorKind::usage, "no column named '" + col + "' in table " + name);
}

double Table::number(std::size_t row, std::size_t col) const {
  const Cell& c = rows.at(row).at(col);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  return std::nan("");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  os << "# oneharm-csv schema=" << t.name << "/v" << schema_version << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = t.name + "/v" + std::to_string(schema_version);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = meta;
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) {
        // Non-finite values have no JSON number form; they are written as the CSV text.
        if (std::isfinite(*d))
          r[t.columns[i]] = *d;
        else
          r[t.columns[i]] = format_double(*d);
      } else if (const auto* n = std::get_if<long long>(&c)) {
        r[t.columns[i]] = *n;
      } else {
        r[t.columns[i]] = std::get<std::string>(c);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace oneharm::cli
