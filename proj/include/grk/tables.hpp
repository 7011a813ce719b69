#pragma once

// Recomputes the published reference tables and compares them against the
// baselines shipped in data/.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grk {

enum class TableId {
  kQueryCounts,      // "table1": S, T and T - S for six (K, K~) pairs
  kAlphaUpperBound,  // "table2": alpha_B(K)
  kObjectiveValues,  // "table3": f at 0, alpha(K), alpha_B(K)
};

std::optional<TableId> parse_table_id(std::string_view name);
const char* to_string(TableId id) noexcept;

struct ReproducedTable {
  TableId id;
  std::vector<std::string> columns;
  // Each row holds the recomputed values, the reference values, the row's
  // largest absolute deviation and the tolerance it is held to.
  std::vector<std::vector<double>> rows;
  double max_deviation = 0.0;
  bool within_tolerance = false;
};

ReproducedTable reproduce_table(TableId id);

}  // namespace grk
