#include "format.hpp"

#include <charconv>
#include <cmath>

namespace cohcorr::cli {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

double round9(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) os << (k ? "," : "") << table.columns[k];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
    os << '\n';
  }
}

Json to_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return round9(*d);
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

Json rows_to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[table.columns[k]] = to_json(row[k]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_json(std::ostream& os, const Json& doc) { os << doc.dump(2) << '\n'; }

}  // namespace cohcorr::cli
