#include "grk/tables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "baselines.hpp"
#include "grk/error.hpp"
#include "grk/hierarchy.hpp"
#include "grk/optimizer.hpp"
#include "grk/schedule_calculus.hpp"

namespace grk {

namespace {

constexpr double kTable1Tolerance = 1e-5;
constexpr double kTable2Tolerance = 1e-5;
constexpr double kTable2InfiniteTolerance = 1e-6;
constexpr double kTable3Tolerance = 1e-6;

double parse_value(std::string token) {
  token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
  if (token == "inf") return kInfiniteBlocks;
  if (token.starts_with("pi/")) return std::numbers::pi / std::stod(token.substr(3));
  return std::stod(token);
}

// Data rows of a baseline CSV: '#' comments and the header line are skipped.
std::vector<std::vector<double>> parse_baseline(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_value(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

ReproducedTable empty_table(TableId id, std::vector<std::string> columns) {
  ReproducedTable t;
  t.id = id;
  t.columns = std::move(columns);
  t.within_tolerance = true;
  return t;
}

void finish_row(ReproducedTable& table, std::vector<double> computed,
                const std::vector<double>& reference, double tolerance) {
  double worst = 0.0;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    worst = std::max(worst, std::abs(computed[i] - reference[i]));
  }
  computed.insert(computed.end(), reference.begin(), reference.end());
  computed.push_back(worst);
  computed.push_back(tolerance);
  table.rows.push_back(std::move(computed));
  table.max_deviation = std::max(table.max_deviation, worst);
  table.within_tolerance = table.within_tolerance && worst <= tolerance;
}

ReproducedTable query_counts() {
  auto t = empty_table(TableId::kQueryCounts,
                       {"k1", "k2", "S", "T", "gap", "ref_S", "ref_T", "ref_gap", "abs_deviation", "tolerance"});
  const auto reference = parse_baseline(detail::table1_baseline());
  for (const Table1Row& row : table1_reproduce()) {
    const auto ref = std::find_if(reference.begin(), reference.end(), [&](const auto& r) {
      return r[0] == row.k1 && r[1] == row.k2;
    });
    if (ref == reference.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no reference row for (" +
                                                   std::to_string(row.k1) + ", " +
                                                   std::to_string(row.k2) + ")");
    }
    finish_row(t, {row.direct, row.hierarchy, row.gap}, {(*ref)[2], (*ref)[3], (*ref)[4]},
               kTable1Tolerance);
    t.rows.back().insert(t.rows.back().begin(), {double(row.k1), double(row.k2)});
  }
  return t;
}

ReproducedTable upper_bounds() {
  auto t = empty_table(TableId::kAlphaUpperBound,
                       {"k", "alpha_upper", "ref_alpha_upper", "abs_deviation", "tolerance"});
  for (const auto& ref : parse_baseline(detail::table2_baseline())) {
    const double k = ref[0];
    finish_row(t, {alpha_upper_bound(k)}, {ref[1]},
               std::isinf(k) ? kTable2InfiniteTolerance : kTable2Tolerance);
    t.rows.back().insert(t.rows.back().begin(), k);
  }
  return t;
}

ReproducedTable objective_values() {
  auto t = empty_table(TableId::kObjectiveValues,
                       {"k", "f_zero", "f_optimum", "f_upper", "ref_f_zero", "ref_f_optimum", "ref_f_upper", "abs_deviation", "tolerance"});
  for (const auto& ref : parse_baseline(detail::table3_baseline())) {
    const double k = ref[0];
    const double upper = alpha_upper_bound(k);
    const double star = std::min(alpha_opt(k), upper);
    finish_row(t, {objective(0.0, k), objective(star, k), objective(upper, k)},
               {ref[1], ref[2], ref[3]}, kTable3Tolerance);
    t.rows.back().insert(t.rows.back().begin(), k);
  }
  return t;
}

}  // namespace

std::optional<TableId> parse_table_id(std::string_view name) {
  if (name == "table1") return TableId::kQueryCounts;
  if (name == "table2") return TableId::kAlphaUpperBound;
  if (name == "table3") return TableId::kObjectiveValues;
  return std::nullopt;
}

const char* to_string(TableId id) noexcept {
  switch (id) {
    case TableId::kQueryCounts: return "table1";
    case TableId::kAlphaUpperBound: return "table2";
    case TableId::kObjectiveValues: return "table3";
  }
  return "?";
}

ReproducedTable reproduce_table(TableId id) {
  switch (id) {
    case TableId::kQueryCounts: return query_counts();
    case TableId::kAlphaUpperBound: return upper_bounds();
    case TableId::kObjectiveValues: return objective_values();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown table id");
}

}  // namespace grk
