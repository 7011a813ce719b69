#pragma once

// Closed-form oracle-query counts. Coefficients are expressed in units of
// sqrt(N) (or sqrt of the sub-database size where noted); block counts are
// real numbers >= 2 so the analytic statements can be checked on a continuum.

#include <cstdint>
#include <span>
#include <vector>

namespace grk {

struct QueryCoefficient {
  double value = 0.0;
};

struct HierarchySpec {
  std::vector<std::uint64_t> levels;  // K_1, ..., K_m

  // Throws Error(kDomain) unless m >= 1 and every level >= 2.
  void validate() const;
  std::uint64_t product() const;
};

// Optimal scaled parameters in the large-block limit.
double alpha_opt(double k);
double eta_opt(double k);

// Constraint curve eta(alpha) on the principal branch, continued through the
// zero of K - 4 sin^2(alpha). Throws Error(kRange) outside [0, alpha_B(k)].
double eta_of_alpha(double alpha, double k);
// Same curve without the range check; used by root finders and fits.
double eta_of_alpha_unchecked(double alpha, double k);

QueryCoefficient s_coeff(double k);
// Sequential stage after a stage with k_prev blocks, in units of sqrt(N~).
QueryCoefficient sbar_coeff(double k_prev, double k);
QueryCoefficient t_coeff(double k1, double k2);
QueryCoefficient t_coeff_multi(std::span<const double> levels);
QueryCoefficient t_coeff_multi(const HierarchySpec& spec);
QueryCoefficient s_direct_multi(std::span<const double> levels);
QueryCoefficient s_direct_multi(const HierarchySpec& spec);
double hierarchy_gap(std::span<const double> levels);
double hierarchy_gap(const HierarchySpec& spec);

// T - S split into the per-level [pi/4 + alpha/2 - eta] terms and the final
// [(alpha - eta)(K_m) - (alpha - eta)(prod K)] term, each already divided by
// the appropriate sqrt of the block-count product.
struct GapDecomposition {
  std::vector<double> lemma1_terms;  // m - 1 entries
  double lemma2_term = 0.0;
  double total = 0.0;
};
GapDecomposition gap_decomposition(std::span<const double> levels);

// Absolute query counts for the simpler partial-search strategies.
struct NaiveQueries {
  double worst = 0.0;
  double average = 0.0;
};
double full_search_queries(double n_items);
NaiveQueries naive_queries(double n_items, double k);
// K must be a power of two >= 2.
double binary_queries(double n_items, std::uint64_t k);
double complement_queries(double n_items, double k);

std::vector<double> to_real_levels(const HierarchySpec& spec);

}  // namespace grk
