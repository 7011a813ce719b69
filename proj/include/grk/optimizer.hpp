#pragma once

// Numerics behind the optimal (alpha, eta): the admissible range of alpha,
// the objective f(alpha) = alpha - eta(alpha) with its closed-form
// derivatives, the monotonicity lemmas used to compare hierarchies with a
// direct search, and the large-K expansions.

#include <limits>
#include <vector>

namespace grk {

// Explicit sentinel for the K -> infinity limit.
inline constexpr double kInfiniteBlocks = std::numeric_limits<double>::infinity();

// K <= 4: the singularity sin^2(alpha) = K/4. K > 4: root of alpha = eta(alpha)
// bracketed by [alpha_B(inf), pi/2]. K = inf: root of alpha = sin(2 alpha).
double alpha_upper_bound(double k);

double objective(double alpha, double k);
double objective_prime(double alpha, double k);
double objective_double_prime(double alpha, double k);
// Central difference of objective() with the given step.
double objective_prime_numeric(double alpha, double k, double step = 1e-6);

struct MinimizationReport {
  double k = 0.0;
  double alpha_star = 0.0;
  double f_value = 0.0;
  double f_prime_at_star = 0.0;
  double f_double_prime_at_star = 0.0;
  double f_at_zero = 0.0;
  double f_at_upper = 0.0;
  // Coefficient of (alpha - pi/4)^3 from a local polynomial fit; K = 2 only.
  double cubic_coefficient = std::numeric_limits<double>::quiet_NaN();
  // Sign changes of f' on a fine grid away from alpha_star.
  std::vector<double> unexpected_critical_points;
  bool local_min_holds = false;
  bool global_min_holds = false;
};

MinimizationReport verify_local_min(double k);

// Least-squares cubic coefficient of f around alpha = pi/4 at K = 2.
double saddle_cubic_coefficient(double half_width = 0.02, int samples = 41);

// pi/4 + alpha(x)/2 - eta(x); positive and increasing on [2, inf).
double lemma1_margin(double x);
// 3/sqrt(3x-4) - arctan(sqrt(3x-4)/(x-2)); margin'(x) = aux(x) / (4 sqrt(x)).
double lemma1_aux(double x);
// sqrt(3x-4)/(x-1) - arctan(sqrt(3x-4)/(x-2)); (alpha-eta)'(x) = g(x)/(4 sqrt(x)).
double lemma2_slope(double x);

double asymptotic_alpha(double x);
double asymptotic_eta(double x);

enum class GapRegime {
  kFirstLevelSmaller,   // K / K~ -> 0
  kSecondLevelSmaller,  // K / K~ -> inf
};

// Leading-order T - S from the large-K expansions, in units of sqrt(N).
double asymptotic_gap(double k, double k2, GapRegime regime);

}  // namespace grk
