#pragma once

// Sequences of partial searches: each stage takes the target block found by
// the previous stage as its whole database, partitions it further and
// searches again, starting from the state the previous stage actually left.

#include <cstdint>
#include <span>
#include <vector>

#include "grk/grk_engine.hpp"
#include "grk/schedule_calculus.hpp"

namespace grk {

// What a later stage does when its global count j1 comes out negative (the
// head start left by the previous stage already overshoots it).
enum class NegativeJ1Policy {
  kClampOnly,          // j1 := 0, keep j2
  kClampAndResolveJ2,  // j1 := 0, re-solve j2 so the leak cancels from the actual state
};

struct HierarchyLevel {
  DatabaseGeometry geometry;       // this stage's database and partition
  IterationSchedule real_schedule; // before rounding
  IterationSchedule schedule;      // executed
  GrkResult result;
  bool j1_clamped = false;         // real j1 came out negative and was set to 0
  double j1_unclamped = 0.0;       // j1 before clamping
  bool j2_resolved = false;        // j2 re-solved after the clamp
  // Probability outside the target block that is dropped before the next
  // stage (equals result.leaked_probability).
  double truncated_probability = 0.0;
};

struct HierarchyRun {
  std::vector<HierarchyLevel> per_level;
  double total_queries = 0.0;
  // Probability that the final target sub-block is the one reached, i.e. the
  // product of (1 - leak) over all stages.
  double success_probability = 0.0;
  IterationSchedule direct_schedule;
  GrkResult direct_equivalent;
};

// Normalized target-block part of `state`, re-read as a database of
// block_size items partitioned into `sub_blocks`.
SymmetricState restrict_to_target_block(const SymmetricState& state, std::uint64_t sub_blocks,
                                        double* discarded = nullptr);

// Throws Error(kInvalidGeometry) unless prod(K_i) divides N and every stage
// keeps blocks of at least 4 items.
HierarchyRun run_hierarchy(std::uint64_t n_items, const HierarchySpec& spec,
                           NegativeJ1Policy policy = NegativeJ1Policy::kClampAndResolveJ2);

// Largest per-item gap between the optimal single-stage output (normalized
// to the target block) and a full search of that block advanced by
// (alpha(K)/2) sqrt(b) iterations.
double sequential_start_deviation(std::uint64_t n_items, std::uint64_t n_blocks);

struct GapCheck {
  double gap = 0.0;
  bool holds = false;  // gap and every decomposition term positive
  GapDecomposition decomposition;
};

GapCheck check_levels(std::span<const double> levels);
GapCheck theorem_check(double k1, double k2);
GapCheck corollary_check(const HierarchySpec& spec);

struct Table1Row {
  int k1 = 0;
  int k2 = 0;
  double direct = 0.0;     // S(K K~)
  double hierarchy = 0.0;  // T(K, K~)
  double gap = 0.0;
};

std::vector<Table1Row> table1_reproduce();

}  // namespace grk
