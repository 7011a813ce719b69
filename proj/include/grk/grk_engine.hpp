#pragma once

// Three-step partial search: j1 global iterations, j2 simultaneous local
// iterations in every block, then one final operation that cancels the
// amplitude of every non-target block.

#include <cstdint>

#include "grk/sim_core.hpp"

namespace grk {

enum class FinalOp {
  kStandardG1,  // G1 = -I_s1 I_t (one query)
  kMinusItIs1,  // -I_t I_s1      (one query)
  kIs1Only,     // I_s1           (no query)
};

const char* to_string(FinalOp op) noexcept;
int final_op_queries(FinalOp op) noexcept;
Eigen::Matrix3d final_operation_matrix(const DatabaseGeometry& geometry, FinalOp op);

struct IterationSchedule {
  double j1 = 0.0;
  double j2 = 0.0;
  FinalOp final_op = FinalOp::kStandardG1;

  // Both counts are whole numbers, so the schedule can run as operator powers.
  bool is_executable() const noexcept;
  // Throws Error(kInvalidArgument) for negative or non-finite counts.
  void validate() const;
  double queries() const noexcept { return j1 + j2 + final_op_queries(final_op); }
};

enum class ExecutionMode {
  kOperatorPower,  // integer schedules only
  kClosedForm,     // real schedules via rotation-angle composition
};

struct GrkResult {
  SymmetricState final_state;
  double leaked_probability = 0.0;  // total probability outside the target block
  double queries_used = 0.0;
};

GrkResult run_grk(const DatabaseGeometry& geometry, const IterationSchedule& schedule,
                  ExecutionMode mode = ExecutionMode::kClosedForm);

// Same three steps starting from an arbitrary normalized state, as needed by
// the second and later stages of a hierarchy.
GrkResult run_grk_from(const SymmetricState& initial, const IterationSchedule& schedule,
                       ExecutionMode mode = ExecutionMode::kClosedForm);

double leaked_probability(const SymmetricState& state);

// Per-item amplitude of a non-target item after G1 G2^j2 G1^j1 |s1>.
double leaked_amplitude(const DatabaseGeometry& geometry, double j1, double j2);

// Root of leaked_amplitude in j1 on [0, pi/(4 theta1)] for fixed j2.
// Throws Error(kNoRoot) when the amplitude keeps one sign on that range.
double solve_cancellation(const DatabaseGeometry& geometry, double j2);

// Smallest j2 in [0, pi/theta2] that cancels the leak of G1 G2^j2 G1^j1 applied
// to `initial` (closed-form evolution). Throws Error(kNoRoot) without a bracket.
double solve_local_cancellation(const SymmetricState& initial, double j1);

struct ScaledParams {
  double alpha = 0.0;
  double eta = 0.0;
};

// j1 = (pi/4 - eta/sqrt(K)) sqrt(N),  j2 = alpha sqrt(N)/sqrt(K).
IterationSchedule schedule_from_scaled(const DatabaseGeometry& geometry,
                                       const ScaledParams& params);
ScaledParams scaled_from_schedule(const DatabaseGeometry& geometry, double j1, double j2);

// Large-block optimum, not rounded.
IterationSchedule optimal_real_schedule(const DatabaseGeometry& geometry);

// Searches the +-2 integer neighborhood of (j1, j2) for the schedule with the
// smallest leaked probability when started from `initial`. Ties go to the
// smaller j1 + j2. Negative candidates are clamped to zero.
IterationSchedule best_integer_schedule_near(const SymmetricState& initial, double j1,
                                             double j2,
                                             FinalOp final_op = FinalOp::kStandardG1);

IterationSchedule optimal_integer_schedule(const DatabaseGeometry& geometry);

struct FinalVariantReport {
  double amp_target_g1 = 0.0;
  double amp_target_minus_it_is1 = 0.0;
  // I_s1 |v> up to the global sign that aligns its non-target part with G1 |v>.
  double amp_target_is1_only = 0.0;
  int queries_g1 = 0;
  int queries_minus_it_is1 = 0;
  int queries_is1_only = 0;
  // Euclidean distance between -I_t I_s1 |v> and G1 |v>.
  double distance_minus_it_is1_vs_g1 = 0.0;
};

FinalVariantReport compare_final_variants(const DatabaseGeometry& geometry,
                                          std::uint64_t j1, std::uint64_t j2);

}  // namespace grk
