#pragma once

// Tabular results and their CSV / JSON renderings.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace grkq {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { kCsv, kJson };

// "%.9g" for doubles; non-finite values become inf / -inf / nan.
std::string format_double(double v);

// A timestamp line (CSV comment, or a JSON field) is written unless
// `timestamp` is empty.
void write_csv(std::ostream& out, const Table& table, const std::string& timestamp);
void write_json(std::ostream& out, const Table& table, const std::string& timestamp);

// UTC, ISO 8601.
std::string utc_timestamp();

}  // namespace grkq
