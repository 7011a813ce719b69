#ifndef GRK_C_H
#define GRK_C_H

/* C interface to the partial-search library.
 *
 * Every function returns a grk_status. On failure the output arguments are
 * left untouched and grk_last_error() describes what went wrong (the message
 * is per thread and stays valid until the next failing call on that thread).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GRK_BUILDING_LIBRARY)
#    define GRK_API __declspec(dllexport)
#  else
#    define GRK_API __declspec(dllimport)
#  endif
#else
#  define GRK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum grk_status {
  GRK_OK = 0,
  GRK_ERR_INVALID_ARGUMENT = 1,
  GRK_ERR_INVALID_GEOMETRY = 2,
  GRK_ERR_INVALID_STATE = 3,
  GRK_ERR_DOMAIN = 4,
  GRK_ERR_RANGE = 5,
  GRK_ERR_MODE = 6,
  GRK_ERR_NO_ROOT = 7,
  GRK_ERR_CAPACITY = 8,
  GRK_ERR_SUBSPACE_VIOLATION = 9,
  GRK_ERR_INTERNAL = 100
} grk_status;

GRK_API const char* grk_status_string(grk_status status);
GRK_API const char* grk_last_error(void);
GRK_API const char* grk_version(void);

/* ---- simulation ------------------------------------------------------- */

typedef struct grk_geometry {
  uint64_t n_items;
  uint64_t n_blocks;
} grk_geometry;

/* Per-item amplitudes of the target, the rest of its block, and every item
 * outside it. */
typedef struct grk_state {
  grk_geometry geometry;
  double amp_target;
  double amp_target_rest;
  double amp_outside;
} grk_state;

typedef enum grk_final_op {
  GRK_FINAL_G1 = 0,        /* -I_s1 I_t */
  GRK_FINAL_MINUS_IT_IS1 = 1, /* -I_t I_s1 */
  GRK_FINAL_IS1 = 2        /* I_s1, no query */
} grk_final_op;

typedef enum grk_mode {
  GRK_MODE_OPERATOR_POWER = 0,
  GRK_MODE_CLOSED_FORM = 1
} grk_mode;

typedef struct grk_schedule {
  double j1;
  double j2;
  grk_final_op final_op;
} grk_schedule;

typedef struct grk_result {
  grk_state final_state;
  double leaked_probability;
  double queries_used;
} grk_result;

typedef enum grk_step { GRK_STEP_GLOBAL = 0, GRK_STEP_LOCAL = 1 } grk_step;

GRK_API grk_status grk_geometry_check(grk_geometry geometry, uint64_t* block_size);
GRK_API grk_status grk_uniform_state(grk_geometry geometry, grk_state* out);
GRK_API grk_status grk_apply_global(const grk_state* state, uint64_t times, grk_state* out);
GRK_API grk_status grk_apply_local(const grk_state* state, uint64_t times, grk_state* out);
GRK_API grk_status grk_evolve_global(const grk_state* state, double j1, grk_state* out);
GRK_API grk_status grk_evolve_local(const grk_state* state, double j2, grk_state* out);
GRK_API grk_status grk_global_closed_form(grk_geometry geometry, double j1, grk_state* out);
GRK_API grk_status grk_full_search(uint64_t n_items, double* j_full, double* success_probability);
GRK_API grk_status grk_target_block_probability(const grk_state* state, double* out);

/* Runs the word on the literal N-item vector (target at target_index) and
 * projects the result back onto the symmetric subspace. max_deviation gets
 * the largest per-item departure from the class means. */
GRK_API grk_status grk_full_simulate(grk_geometry geometry, uint64_t target_index,
                                     const grk_step* word, size_t word_length, size_t cap,
                                     grk_state* projected, double* max_deviation);

/* ---- partial search --------------------------------------------------- */

GRK_API grk_status grk_run(grk_geometry geometry, const grk_schedule* schedule, grk_mode mode,
                           grk_result* out);
GRK_API grk_status grk_run_from(const grk_state* initial, const grk_schedule* schedule,
                                grk_mode mode, grk_result* out);
GRK_API grk_status grk_leaked_amplitude(grk_geometry geometry, double j1, double j2, double* out);
GRK_API grk_status grk_solve_cancellation(grk_geometry geometry, double j2, double* j1);
GRK_API grk_status grk_optimal_real_schedule(grk_geometry geometry, grk_schedule* out);
GRK_API grk_status grk_optimal_integer_schedule(grk_geometry geometry, grk_schedule* out);
GRK_API grk_status grk_best_integer_schedule_near(const grk_state* initial, double j1, double j2,
                                                  grk_final_op final_op, grk_schedule* out);
GRK_API grk_status grk_scaled_from_schedule(grk_geometry geometry, double j1, double j2,
                                            double* alpha, double* eta);
GRK_API grk_status grk_schedule_from_scaled(grk_geometry geometry, double alpha, double eta,
                                            grk_schedule* out);

typedef struct grk_final_variants {
  double amp_target_g1;
  double amp_target_minus_it_is1;
  double amp_target_is1_only;
  int queries_g1;
  int queries_minus_it_is1;
  int queries_is1_only;
  double distance_minus_it_is1_vs_g1;
} grk_final_variants;

GRK_API grk_status grk_compare_final_variants(grk_geometry geometry, double j1, double j2,
                                              grk_final_variants* out);

/* ---- query coefficients ------------------------------------------------
 * K arguments are doubles; INFINITY is accepted where a limit exists. */

GRK_API grk_status grk_alpha_opt(double k, double* out);
GRK_API grk_status grk_eta_opt(double k, double* out);
GRK_API grk_status grk_eta_of_alpha(double alpha, double k, double* out);
GRK_API grk_status grk_s_coeff(double k, double* out);
GRK_API grk_status grk_sbar_coeff(double k_prev, double k, double* out);
GRK_API grk_status grk_t_coeff(const double* levels, size_t count, double* out);
GRK_API grk_status grk_s_direct(const double* levels, size_t count, double* out);
GRK_API grk_status grk_hierarchy_gap(const double* levels, size_t count, double* out);
/* lemma1_terms receives count - 1 values and may be NULL when count == 1. */
GRK_API grk_status grk_gap_decomposition(const double* levels, size_t count,
                                         double* lemma1_terms, double* lemma2_term,
                                         double* total);

GRK_API grk_status grk_full_search_queries(double n_items, double* out);
GRK_API grk_status grk_naive_queries(double n_items, double k, double* worst, double* average);
GRK_API grk_status grk_binary_queries(double n_items, uint64_t k, double* out);
GRK_API grk_status grk_complement_queries(double n_items, double k, double* out);

/* ---- optimizer --------------------------------------------------------- */

typedef struct grk_min_report {
  double k;
  double alpha_star;
  double f_value;
  double f_prime_at_star;
  double f_double_prime_at_star;
  double f_at_zero;
  double f_at_upper;
  double cubic_coefficient; /* NaN unless K == 2 */
  size_t unexpected_critical_points;
  int local_min_holds;
  int global_min_holds;
} grk_min_report;

typedef enum grk_gap_regime {
  GRK_REGIME_FIRST_LEVEL_SMALLER = 0,
  GRK_REGIME_SECOND_LEVEL_SMALLER = 1
} grk_gap_regime;

GRK_API grk_status grk_alpha_upper_bound(double k, double* out);
GRK_API grk_status grk_objective(double alpha, double k, double* out);
GRK_API grk_status grk_objective_prime(double alpha, double k, double* out);
GRK_API grk_status grk_objective_double_prime(double alpha, double k, double* out);
GRK_API grk_status grk_verify_local_min(double k, grk_min_report* out);
GRK_API grk_status grk_saddle_cubic_coefficient(double* out);
GRK_API grk_status grk_lemma1_margin(double x, double* out);
GRK_API grk_status grk_lemma2_slope(double x, double* out);
GRK_API grk_status grk_asymptotic_alpha(double x, double* out);
GRK_API grk_status grk_asymptotic_eta(double x, double* out);
/* regime is a grk_gap_regime value; anything else is GRK_ERR_DOMAIN. */
GRK_API grk_status grk_asymptotic_gap(double k, double k2, int regime, double* out);

/* ---- hierarchy --------------------------------------------------------- */

typedef struct grk_hierarchy_run grk_hierarchy_run;

typedef struct grk_level_info {
  grk_geometry geometry;
  grk_schedule real_schedule;
  grk_schedule schedule;
  grk_result result;
  double j1_unclamped;
  int j1_clamped;
  int j2_resolved;
  double truncated_probability;
} grk_level_info;

typedef struct grk_hierarchy_summary {
  double total_queries;
  double success_probability;
  grk_schedule direct_schedule;
  grk_result direct_equivalent;
} grk_hierarchy_summary;

typedef struct grk_gap_check {
  double gap;
  int holds;
  double lemma2_term;
  double total;
} grk_gap_check;

typedef enum grk_negative_j1_policy {
  GRK_NEGATIVE_J1_CLAMP_ONLY = 0,
  GRK_NEGATIVE_J1_CLAMP_AND_RESOLVE_J2 = 1
} grk_negative_j1_policy;

/* Later stages whose global count comes out negative clamp it to 0; the
 * policy says whether j2 is then re-solved for cancellation. */
GRK_API grk_status grk_hierarchy_create(uint64_t n_items, const uint64_t* levels, size_t count,
                                        grk_negative_j1_policy policy,
                                        grk_hierarchy_run** out);
GRK_API void grk_hierarchy_destroy(grk_hierarchy_run* run);
GRK_API size_t grk_hierarchy_level_count(const grk_hierarchy_run* run);
GRK_API grk_status grk_hierarchy_level(const grk_hierarchy_run* run, size_t index,
                                       grk_level_info* out);
GRK_API grk_status grk_hierarchy_summarize(const grk_hierarchy_run* run,
                                           grk_hierarchy_summary* out);

GRK_API grk_status grk_theorem_check(double k1, double k2, grk_gap_check* out);
GRK_API grk_status grk_corollary_check(const uint64_t* levels, size_t count, grk_gap_check* out);
GRK_API grk_status grk_sequential_start_deviation(uint64_t n_items, uint64_t n_blocks,
                                                  double* out);

/* ---- partitions -------------------------------------------------------- */

/* The exact count is written as a decimal string into buffer when N is at
 * most exact_cap. *needed always receives the string length plus one (0 when
 * only the logarithm is available); a short buffer gives GRK_ERR_CAPACITY. */
GRK_API grk_status grk_partition_count(uint64_t n_items, uint64_t n_blocks, uint64_t exact_cap,
                                       char* buffer, size_t buffer_size, size_t* needed,
                                       double* log2_value);
GRK_API grk_status grk_ancilla_bits(uint64_t n_items, uint64_t n_blocks, uint64_t exact_cap,
                                    uint64_t* exact_bits, double* asymptotic_bits);

/* ---- reference tables -------------------------------------------------- */

typedef struct grk_table grk_table;

/* name is "table1", "table2" or "table3". */
GRK_API grk_status grk_table_create(const char* name, grk_table** out);
GRK_API void grk_table_destroy(grk_table* table);
GRK_API size_t grk_table_rows(const grk_table* table);
GRK_API size_t grk_table_columns(const grk_table* table);
GRK_API const char* grk_table_column_name(const grk_table* table, size_t column);
GRK_API grk_status grk_table_value(const grk_table* table, size_t row, size_t column,
                                   double* out);
GRK_API double grk_table_max_deviation(const grk_table* table);
GRK_API int grk_table_within_tolerance(const grk_table* table);

#ifdef __cplusplus
}
#endif

#endif /* GRK_C_H */
