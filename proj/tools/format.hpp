#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cohcorr::cli {

using Json = nlohmann::ordered_json;

// 9 significant digits, '.' decimal point regardless of locale.
std::string format_number(double v);
// v rounded to what format_number prints.
double round9(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& os, const Table& table);
Json to_json(const Cell& cell);
Json rows_to_json(const Table& table);
void write_json(std::ostream& os, const Json& doc);

}  // namespace cohcorr::cli
