#include "grk/grk_c.h"

#include <cmath>
#include <cstring>
#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "grk/error.hpp"
#include "grk/grk_engine.hpp"
#include "grk/hierarchy.hpp"
#include "grk/optimizer.hpp"
#include "grk/partitions.hpp"
#include "grk/schedule_calculus.hpp"
#include "grk/sim_core.hpp"
#include "grk/tables.hpp"

struct grk_hierarchy_run {
  grk::HierarchyRun run;
};

struct grk_table {
  grk::ReproducedTable table;
};

namespace {

thread_local std::string g_last_error;

grk_status fail(grk_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs fn, mapping exceptions to status codes.
template <typename Fn>
grk_status guarded(Fn&& fn) {
  try {
    fn();
    return GRK_OK;
  } catch (const grk::Error& e) {
    return fail(static_cast<grk_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GRK_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(GRK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GRK_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw grk::Error(grk::ErrorCode::kInvalidArgument, what);
}

grk::DatabaseGeometry to_cpp(grk_geometry g) { return {g.n_items, g.n_blocks}; }

grk_geometry to_c(const grk::DatabaseGeometry& g) { return {g.n_items(), g.n_blocks()}; }

grk::SymmetricState to_cpp(const grk_state& s) {
  return {to_cpp(s.geometry), s.amp_target, s.amp_target_rest, s.amp_outside};
}

grk_state to_c(const grk::SymmetricState& s) {
  return {to_c(s.geometry), s.amp_target, s.amp_target_rest, s.amp_outside};
}

grk::FinalOp to_cpp(grk_final_op op) {
  switch (op) {
    case GRK_FINAL_G1: return grk::FinalOp::kStandardG1;
    case GRK_FINAL_MINUS_IT_IS1: return grk::FinalOp::kMinusItIs1;
    case GRK_FINAL_IS1: return grk::FinalOp::kIs1Only;
  }
  throw grk::Error(grk::ErrorCode::kInvalidArgument, "unknown final operation");
}

grk_final_op to_c(grk::FinalOp op) {
  switch (op) {
    case grk::FinalOp::kStandardG1: return GRK_FINAL_G1;
    case grk::FinalOp::kMinusItIs1: return GRK_FINAL_MINUS_IT_IS1;
    case grk::FinalOp::kIs1Only: return GRK_FINAL_IS1;
  }
  return GRK_FINAL_G1;
}

grk::IterationSchedule to_cpp(const grk_schedule& s) { return {s.j1, s.j2, to_cpp(s.final_op)}; }

grk_schedule to_c(const grk::IterationSchedule& s) { return {s.j1, s.j2, to_c(s.final_op)}; }

grk_result to_c(const grk::GrkResult& r) {
  return {to_c(r.final_state), r.leaked_probability, r.queries_used};
}

grk::ExecutionMode to_cpp(grk_mode mode) {
  switch (mode) {
    case GRK_MODE_OPERATOR_POWER: return grk::ExecutionMode::kOperatorPower;
    case GRK_MODE_CLOSED_FORM: return grk::ExecutionMode::kClosedForm;
  }
  throw grk::Error(grk::ErrorCode::kInvalidArgument, "unknown execution mode");
}

std::vector<double> levels_of(const double* levels, std::size_t count) {
  require(levels != nullptr && count > 0, "levels must be a non-empty array");
  return {levels, levels + count};
}

grk::HierarchySpec spec_of(const uint64_t* levels, std::size_t count) {
  require(levels != nullptr && count > 0, "levels must be a non-empty array");
  return {std::vector<std::uint64_t>(levels, levels + count)};
}

grk_gap_check to_c(const grk::GapCheck& c) {
  return {c.gap, c.holds ? 1 : 0, c.decomposition.lemma2_term, c.decomposition.total};
}

// Shorthand for the many scalar-in, scalar-out entry points.
template <typename Fn>
grk_status scalar(double* out, Fn&& fn) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = fn();
  });
}

}  // namespace

extern "C" {

const char* grk_status_string(grk_status status) {
  if (status == GRK_OK) return "ok";
  if (status == GRK_ERR_INTERNAL) return "internal error";
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 9) return grk::to_string(static_cast<grk::ErrorCode>(code));
  return "unknown status";
}

const char* grk_last_error(void) { return g_last_error.c_str(); }

const char* grk_version(void) { return "0.1.0"; }

grk_status grk_geometry_check(grk_geometry geometry, uint64_t* block_size) {
  return guarded([&] {
    const auto g = to_cpp(geometry);
    if (block_size != nullptr) *block_size = g.block_size();
  });
}

grk_status grk_uniform_state(grk_geometry geometry, grk_state* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::uniform_state(to_cpp(geometry)));
  });
}

grk_status grk_apply_global(const grk_state* state, uint64_t times, grk_state* out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::apply_global(to_cpp(*state), times));
  });
}

grk_status grk_apply_local(const grk_state* state, uint64_t times, grk_state* out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::apply_local(to_cpp(*state), times));
  });
}

grk_status grk_evolve_global(const grk_state* state, double j1, grk_state* out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::evolve_global(to_cpp(*state), j1));
  });
}

grk_status grk_evolve_local(const grk_state* state, double j2, grk_state* out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::evolve_local(to_cpp(*state), j2));
  });
}

grk_status grk_global_closed_form(grk_geometry geometry, double j1, grk_state* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::global_closed_form(to_cpp(geometry), j1));
  });
}

grk_status grk_full_search(uint64_t n_items, double* j_full, double* success_probability) {
  return guarded([&] {
    const auto r = grk::grover_full_search(n_items);
    if (j_full != nullptr) *j_full = r.j_full;
    if (success_probability != nullptr) *success_probability = r.success_probability;
  });
}

grk_status grk_target_block_probability(const grk_state* state, double* out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null pointer argument");
    *out = grk::target_block_probability(to_cpp(*state));
  });
}

grk_status grk_full_simulate(grk_geometry geometry, uint64_t target_index, const grk_step* word,
                             size_t word_length, size_t cap, grk_state* projected,
                             double* max_deviation) {
  return guarded([&] {
    require(word != nullptr || word_length == 0, "null word with non-zero length");
    const auto g = to_cpp(geometry);
    std::vector<grk::Step> steps;
    steps.reserve(word_length);
    for (std::size_t i = 0; i < word_length; ++i) {
      require(word[i] == GRK_STEP_GLOBAL || word[i] == GRK_STEP_LOCAL, "unknown step");
      steps.push_back(word[i] == GRK_STEP_GLOBAL ? grk::Step::kGlobal : grk::Step::kLocal);
    }
    const auto full = grk::full_state_simulate(g, target_index, steps, {cap});
    try {
      const auto s = grk::project_to_symmetric(full, g);
      if (projected != nullptr) *projected = to_c(s);
      if (max_deviation != nullptr) *max_deviation = 0.0;
    } catch (const grk::SubspaceViolation& v) {
      if (max_deviation != nullptr) *max_deviation = v.max_deviation();
      throw;
    }
  });
}

grk_status grk_run(grk_geometry geometry, const grk_schedule* schedule, grk_mode mode,
                   grk_result* out) {
  return guarded([&] {
    require(schedule != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::run_grk(to_cpp(geometry), to_cpp(*schedule), to_cpp(mode)));
  });
}

grk_status grk_run_from(const grk_state* initial, const grk_schedule* schedule, grk_mode mode,
                        grk_result* out) {
  return guarded([&] {
    require(initial != nullptr && schedule != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::run_grk_from(to_cpp(*initial), to_cpp(*schedule), to_cpp(mode)));
  });
}

grk_status grk_leaked_amplitude(grk_geometry geometry, double j1, double j2, double* out) {
  return scalar(out, [&] { return grk::leaked_amplitude(to_cpp(geometry), j1, j2); });
}

grk_status grk_solve_cancellation(grk_geometry geometry, double j2, double* j1) {
  return scalar(j1, [&] { return grk::solve_cancellation(to_cpp(geometry), j2); });
}

grk_status grk_optimal_real_schedule(grk_geometry geometry, grk_schedule* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::optimal_real_schedule(to_cpp(geometry)));
  });
}

grk_status grk_optimal_integer_schedule(grk_geometry geometry, grk_schedule* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::optimal_integer_schedule(to_cpp(geometry)));
  });
}

grk_status grk_best_integer_schedule_near(const grk_state* initial, double j1, double j2,
                                          grk_final_op final_op, grk_schedule* out) {
  return guarded([&] {
    require(initial != nullptr && out != nullptr, "null pointer argument");
    *out = to_c(grk::best_integer_schedule_near(to_cpp(*initial), j1, j2, to_cpp(final_op)));
  });
}

grk_status grk_scaled_from_schedule(grk_geometry geometry, double j1, double j2, double* alpha,
                                    double* eta) {
  return guarded([&] {
    require(alpha != nullptr && eta != nullptr, "null output pointer");
    const auto p = grk::scaled_from_schedule(to_cpp(geometry), j1, j2);
    *alpha = p.alpha;
    *eta = p.eta;
  });
}

grk_status grk_schedule_from_scaled(grk_geometry geometry, double alpha, double eta,
                                    grk_schedule* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::schedule_from_scaled(to_cpp(geometry), {alpha, eta}));
  });
}

grk_status grk_compare_final_variants(grk_geometry geometry, double j1, double j2,
                                      grk_final_variants* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    auto whole = [](double j) { return j >= 0.0 && j < 1.8e19 && std::floor(j) == j; };
    require(whole(j1) && whole(j2), "j1 and j2 must be non-negative integers");
    const auto r = grk::compare_final_variants(to_cpp(geometry), static_cast<std::uint64_t>(j1),
                                               static_cast<std::uint64_t>(j2));
    *out = {r.amp_target_g1,
            r.amp_target_minus_it_is1,
            r.amp_target_is1_only,
            r.queries_g1,
            r.queries_minus_it_is1,
            r.queries_is1_only,
            r.distance_minus_it_is1_vs_g1};
  });
}

grk_status grk_alpha_opt(double k, double* out) {
  return scalar(out, [&] { return grk::alpha_opt(k); });
}

grk_status grk_eta_opt(double k, double* out) {
  return scalar(out, [&] { return grk::eta_opt(k); });
}

grk_status grk_eta_of_alpha(double alpha, double k, double* out) {
  return scalar(out, [&] { return grk::eta_of_alpha(alpha, k); });
}

grk_status grk_s_coeff(double k, double* out) {
  return scalar(out, [&] { return grk::s_coeff(k).value; });
}

grk_status grk_sbar_coeff(double k_prev, double k, double* out) {
  return scalar(out, [&] { return grk::sbar_coeff(k_prev, k).value; });
}

grk_status grk_t_coeff(const double* levels, size_t count, double* out) {
  return scalar(out, [&] { return grk::t_coeff_multi(levels_of(levels, count)).value; });
}

grk_status grk_s_direct(const double* levels, size_t count, double* out) {
  return scalar(out, [&] { return grk::s_direct_multi(levels_of(levels, count)).value; });
}

grk_status grk_hierarchy_gap(const double* levels, size_t count, double* out) {
  return scalar(out, [&] { return grk::hierarchy_gap(levels_of(levels, count)); });
}

grk_status grk_gap_decomposition(const double* levels, size_t count, double* lemma1_terms,
                                 double* lemma2_term, double* total) {
  return guarded([&] {
    const auto d = grk::gap_decomposition(levels_of(levels, count));
    require(lemma1_terms != nullptr || d.lemma1_terms.empty(), "null lemma1_terms");
    std::copy(d.lemma1_terms.begin(), d.lemma1_terms.end(), lemma1_terms);
    if (lemma2_term != nullptr) *lemma2_term = d.lemma2_term;
    if (total != nullptr) *total = d.total;
  });
}

grk_status grk_full_search_queries(double n_items, double* out) {
  return scalar(out, [&] { return grk::full_search_queries(n_items); });
}

grk_status grk_naive_queries(double n_items, double k, double* worst, double* average) {
  return guarded([&] {
    require(worst != nullptr && average != nullptr, "null output pointer");
    const auto q = grk::naive_queries(n_items, k);
    *worst = q.worst;
    *average = q.average;
  });
}

grk_status grk_binary_queries(double n_items, uint64_t k, double* out) {
  return scalar(out, [&] { return grk::binary_queries(n_items, k); });
}

grk_status grk_complement_queries(double n_items, double k, double* out) {
  return scalar(out, [&] { return grk::complement_queries(n_items, k); });
}

grk_status grk_alpha_upper_bound(double k, double* out) {
  return scalar(out, [&] { return grk::alpha_upper_bound(k); });
}

grk_status grk_objective(double alpha, double k, double* out) {
  return scalar(out, [&] { return grk::objective(alpha, k); });
}

grk_status grk_objective_prime(double alpha, double k, double* out) {
  return scalar(out, [&] { return grk::objective_prime(alpha, k); });
}

grk_status grk_objective_double_prime(double alpha, double k, double* out) {
  return scalar(out, [&] { return grk::objective_double_prime(alpha, k); });
}

grk_status grk_verify_local_min(double k, grk_min_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    const auto r = grk::verify_local_min(k);
    *out = {r.k,
            r.alpha_star,
            r.f_value,
            r.f_prime_at_star,
            r.f_double_prime_at_star,
            r.f_at_zero,
            r.f_at_upper,
            r.cubic_coefficient,
            r.unexpected_critical_points.size(),
            r.local_min_holds ? 1 : 0,
            r.global_min_holds ? 1 : 0};
  });
}

grk_status grk_saddle_cubic_coefficient(double* out) {
  return scalar(out, [] { return grk::saddle_cubic_coefficient(); });
}

grk_status grk_lemma1_margin(double x, double* out) {
  return scalar(out, [&] { return grk::lemma1_margin(x); });
}

grk_status grk_lemma2_slope(double x, double* out) {
  return scalar(out, [&] { return grk::lemma2_slope(x); });
}

grk_status grk_asymptotic_alpha(double x, double* out) {
  return scalar(out, [&] { return grk::asymptotic_alpha(x); });
}

grk_status grk_asymptotic_eta(double x, double* out) {
  return scalar(out, [&] { return grk::asymptotic_eta(x); });
}

grk_status grk_asymptotic_gap(double k, double k2, int regime, double* out) {
  return scalar(out, [&] {
    if (regime != GRK_REGIME_FIRST_LEVEL_SMALLER && regime != GRK_REGIME_SECOND_LEVEL_SMALLER) {
      throw grk::Error(grk::ErrorCode::kDomain,
                       "unknown asymptotic regime " + std::to_string(regime));
    }
    return grk::asymptotic_gap(k, k2,
                               regime == GRK_REGIME_FIRST_LEVEL_SMALLER
                                   ? grk::GapRegime::kFirstLevelSmaller
                                   : grk::GapRegime::kSecondLevelSmaller);
  });
}

grk_status grk_hierarchy_create(uint64_t n_items, const uint64_t* levels, size_t count,
                                grk_negative_j1_policy policy, grk_hierarchy_run** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    require(policy == GRK_NEGATIVE_J1_CLAMP_ONLY || policy == GRK_NEGATIVE_J1_CLAMP_AND_RESOLVE_J2,
            "unknown negative-j1 policy");
    auto run = std::make_unique<grk_hierarchy_run>();
    run->run = grk::run_hierarchy(n_items, spec_of(levels, count),
                                  policy == GRK_NEGATIVE_J1_CLAMP_ONLY
                                      ? grk::NegativeJ1Policy::kClampOnly
                                      : grk::NegativeJ1Policy::kClampAndResolveJ2);
    *out = run.release();
  });
}

void grk_hierarchy_destroy(grk_hierarchy_run* run) { delete run; }

size_t grk_hierarchy_level_count(const grk_hierarchy_run* run) {
  return run == nullptr ? 0 : run->run.per_level.size();
}

grk_status grk_hierarchy_level(const grk_hierarchy_run* run, size_t index, grk_level_info* out) {
  return guarded([&] {
    require(run != nullptr && out != nullptr, "null pointer argument");
    if (index >= run->run.per_level.size()) {
      throw grk::Error(grk::ErrorCode::kRange, "level index out of range");
    }
    const auto& l = run->run.per_level[index];
    *out = {to_c(l.geometry),        to_c(l.real_schedule), to_c(l.schedule),
            to_c(l.result),          l.j1_unclamped,        l.j1_clamped ? 1 : 0,
            l.j2_resolved ? 1 : 0,   l.truncated_probability};
  });
}

grk_status grk_hierarchy_summarize(const grk_hierarchy_run* run, grk_hierarchy_summary* out) {
  return guarded([&] {
    require(run != nullptr && out != nullptr, "null pointer argument");
    const auto& r = run->run;
    *out = {r.total_queries, r.success_probability, to_c(r.direct_schedule),
            to_c(r.direct_equivalent)};
  });
}

grk_status grk_theorem_check(double k1, double k2, grk_gap_check* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::theorem_check(k1, k2));
  });
}

grk_status grk_corollary_check(const uint64_t* levels, size_t count, grk_gap_check* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(grk::corollary_check(spec_of(levels, count)));
  });
}

grk_status grk_sequential_start_deviation(uint64_t n_items, uint64_t n_blocks, double* out) {
  return scalar(out, [&] { return grk::sequential_start_deviation(n_items, n_blocks); });
}

grk_status grk_partition_count(uint64_t n_items, uint64_t n_blocks, uint64_t exact_cap,
                               char* buffer, size_t buffer_size, size_t* needed,
                               double* log2_value) {
  return guarded([&] {
    const auto p = grk::partition_count(n_items, n_blocks, exact_cap);
    if (log2_value != nullptr) *log2_value = p.log2_value;
    if (!p.exact) {
      if (needed != nullptr) *needed = 0;
      if (buffer != nullptr && buffer_size > 0) buffer[0] = '\0';
      return;
    }
    const std::string digits = p.exact->str();
    if (needed != nullptr) *needed = digits.size() + 1;
    if (buffer == nullptr) return;
    if (buffer_size < digits.size() + 1) {
      throw grk::Error(grk::ErrorCode::kCapacity, "buffer too small for " +
                                                      std::to_string(digits.size()) +
                                                      " digits");
    }
    std::memcpy(buffer, digits.c_str(), digits.size() + 1);
  });
}

grk_status grk_ancilla_bits(uint64_t n_items, uint64_t n_blocks, uint64_t exact_cap,
                            uint64_t* exact_bits, double* asymptotic_bits) {
  return guarded([&] {
    const auto b = grk::ancilla_bits(n_items, n_blocks, exact_cap);
    if (exact_bits != nullptr) *exact_bits = b.exact_bits;
    if (asymptotic_bits != nullptr) *asymptotic_bits = b.asymptotic_bits;
  });
}

grk_status grk_table_create(const char* name, grk_table** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null pointer argument");
    const auto id = grk::parse_table_id(name);
    if (!id) {
      throw grk::Error(grk::ErrorCode::kInvalidArgument,
                       std::string("unknown table '") + name + "'");
    }
    auto t = std::make_unique<grk_table>();
    t->table = grk::reproduce_table(*id);
    *out = t.release();
  });
}

void grk_table_destroy(grk_table* table) { delete table; }

size_t grk_table_rows(const grk_table* table) {
  return table == nullptr ? 0 : table->table.rows.size();
}

size_t grk_table_columns(const grk_table* table) {
  return table == nullptr ? 0 : table->table.columns.size();
}

const char* grk_table_column_name(const grk_table* table, size_t column) {
  if (table == nullptr || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].c_str();
}

grk_status grk_table_value(const grk_table* table, size_t row, size_t column, double* out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null pointer argument");
    const auto& rows = table->table.rows;
    if (row >= rows.size() || column >= rows[row].size()) {
      throw grk::Error(grk::ErrorCode::kRange, "table cell out of range");
    }
    *out = rows[row][column];
  });
}

double grk_table_max_deviation(const grk_table* table) {
  return table == nullptr ? std::nan("") : table->table.max_deviation;
}

int grk_table_within_tolerance(const grk_table* table) {
  return table != nullptr && table->table.within_tolerance ? 1 : 0;
}

}  // extern "C"
