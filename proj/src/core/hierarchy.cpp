#include "grk/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "grk/error.hpp"

namespace grk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMinBlockSize = 4;

std::vector<DatabaseGeometry> stage_geometries(std::uint64_t n_items, const HierarchySpec& spec) {
  spec.validate();
  std::vector<DatabaseGeometry> out;
  std::uint64_t remaining = n_items;
  for (auto k : spec.levels) {
    if (remaining % k != 0 || remaining / k < kMinBlockSize) {
      std::ostringstream os;
      os << "hierarchy [";
      for (std::size_t i = 0; i < spec.levels.size(); ++i) os << (i ? "," : "") << spec.levels[i];
      os << "] does not fit N=" << n_items << ": a stage with " << remaining
         << " items cannot be split into " << k << " blocks of at least " << kMinBlockSize;
      throw Error(ErrorCode::kInvalidGeometry, os.str());
    }
    out.emplace_back(remaining, k);
    remaining /= k;
  }
  return out;
}

}  // namespace

SymmetricState restrict_to_target_block(const SymmetricState& state, std::uint64_t sub_blocks,
                                        double* discarded) {
  const auto& g = state.geometry;
  const double b = static_cast<double>(g.block_size());
  const double kept = state.amp_target * state.amp_target +
                      (b - 1.0) * state.amp_target_rest * state.amp_target_rest;
  if (discarded != nullptr) *discarded = std::max(0.0, state.norm_squared() - kept);
  const double scale = 1.0 / std::sqrt(kept);
  const DatabaseGeometry inner(g.block_size(), sub_blocks);
  // Every non-target item of the old block has the same amplitude, whether it
  // lands in the new target sub-block or not.
  return SymmetricState{inner, scale * state.amp_target, scale * state.amp_target_rest,
                        scale * state.amp_target_rest};
}

HierarchyRun run_hierarchy(std::uint64_t n_items, const HierarchySpec& spec,
                           NegativeJ1Policy policy) {
  const auto geometries = stage_geometries(n_items, spec);
  HierarchyRun run;
  run.success_probability = 1.0;

  SymmetricState state = uniform_state(geometries.front());
  for (std::size_t i = 0; i < geometries.size(); ++i) {
    const auto& g = geometries[i];
    HierarchyLevel level;
    level.geometry = g;
    if (i == 0) {
      level.real_schedule = optimal_real_schedule(g);
      level.j1_unclamped = level.real_schedule.j1;
    } else {
      const double k = static_cast<double>(g.n_blocks());
      const double k_prev = static_cast<double>(spec.levels[i - 1]);
      const double root_n = std::sqrt(static_cast<double>(g.n_items()));
      const double root_b = std::sqrt(static_cast<double>(g.block_size()));
      double j1 = (kPi / 4.0 - alpha_opt(k_prev) / 2.0 - eta_opt(k) / std::sqrt(k)) * root_n;
      double j2 = alpha_opt(k) * root_b;
      level.j1_unclamped = j1;
      if (j1 < 0.0) {
        level.j1_clamped = true;
        j1 = 0.0;
        if (policy == NegativeJ1Policy::kClampAndResolveJ2) {
          j2 = solve_local_cancellation(state, 0.0);
          level.j2_resolved = true;
        }
      }
      level.real_schedule = {j1, j2, FinalOp::kStandardG1};
    }
    level.schedule =
        best_integer_schedule_near(state, level.real_schedule.j1, level.real_schedule.j2);
    level.result = run_grk_from(state, level.schedule, ExecutionMode::kOperatorPower);
    level.truncated_probability = level.result.leaked_probability;

    run.total_queries += level.result.queries_used;
    run.success_probability *= 1.0 - level.result.leaked_probability;
    if (i + 1 < geometries.size()) {
      state = restrict_to_target_block(level.result.final_state, spec.levels[i + 1]);
    }
    run.per_level.push_back(std::move(level));
  }

  const DatabaseGeometry direct(n_items, spec.product());
  run.direct_schedule = optimal_integer_schedule(direct);
  run.direct_equivalent = run_grk(direct, run.direct_schedule, ExecutionMode::kOperatorPower);
  return run;
}

double sequential_start_deviation(std::uint64_t n_items, std::uint64_t n_blocks) {
  const DatabaseGeometry g(n_items, n_blocks);
  const GrkResult r = run_grk(g, optimal_integer_schedule(g));
  const SymmetricState block = restrict_to_target_block(r.final_state, 1);
  const double head_start = alpha_opt(static_cast<double>(n_blocks)) / 2.0 *
                            std::sqrt(static_cast<double>(g.block_size()));
  const SymmetricState ref = global_closed_form(block.geometry, head_start);
  return std::max(std::abs(block.amp_target - ref.amp_target),
                  std::abs(block.amp_target_rest - ref.amp_target_rest));
}

GapCheck check_levels(std::span<const double> levels) {
  GapCheck c;
  c.gap = hierarchy_gap(levels);
  c.decomposition = gap_decomposition(levels);
  const auto& terms = c.decomposition.lemma1_terms;
  c.holds = c.gap > 0.0 && c.decomposition.lemma2_term > 0.0 &&
            std::all_of(terms.begin(), terms.end(), [](double t) { return t > 0.0; });
  return c;
}

GapCheck corollary_check(const HierarchySpec& spec) { return check_levels(to_real_levels(spec)); }

GapCheck theorem_check(double k1, double k2) {
  const double levels[] = {k1, k2};
  return check_levels(levels);
}

std::vector<Table1Row> table1_reproduce() {
  static constexpr int kRows[][2] = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3}};
  std::vector<Table1Row> rows;
  for (const auto& [k1, k2] : kRows) {
    const double s = s_coeff(static_cast<double>(k1 * k2)).value;
    const double t = t_coeff(k1, k2).value;
    rows.push_back({k1, k2, s, t, t - s});
  }
  return rows;
}

}  // namespace grk
