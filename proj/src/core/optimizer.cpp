#include "grk/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "grk/error.hpp"
#include "grk/schedule_calculus.hpp"
#include "root_finding.hpp"

namespace grk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kRootTolerance = 1e-15;
constexpr double kRangeSlack = 1e-12;

void require_block_count(double k, const char* what) {
  if (!(k >= 2.0)) {
    std::ostringstream os;
    os << what << " needs K >= 2, got " << k;
    throw Error(ErrorCode::kDomain, os.str());
  }
}

void require_alpha_in_range(double alpha, double k) {
  require_block_count(k, "objective");
  const double upper = alpha_upper_bound(k);
  if (!(alpha >= -kRangeSlack && alpha <= upper + kRangeSlack)) {
    std::ostringstream os;
    os << "alpha=" << alpha << " outside [0, " << upper << "] for K=" << k;
    throw Error(ErrorCode::kRange, os.str());
  }
}

double infinite_limit_bound() {
  static const double root = detail::bisect(
      [](double a) { return a - std::sin(2.0 * a); }, 0.5, kPi / 2.0, kRootTolerance);
  return root;
}

double f_unchecked(double alpha, double k) { return alpha - eta_of_alpha_unchecked(alpha, k); }

}  // namespace

double alpha_upper_bound(double k) {
  require_block_count(k, "alpha_upper_bound");
  if (std::isinf(k)) return infinite_limit_bound();
  if (k <= 4.0) return std::asin(std::sqrt(k) / 2.0);

  auto gap = [k](double a) { return a - eta_of_alpha_unchecked(a, k); };
  const double lo = infinite_limit_bound();
  // For very large K the root sits within rounding of alpha_B(inf).
  if (gap(lo) >= 0.0) return lo;
  return detail::bisect(gap, lo, kPi / 2.0, kRootTolerance);
}

double objective(double alpha, double k) {
  require_alpha_in_range(alpha, k);
  return f_unchecked(alpha, k);
}

double objective_prime(double alpha, double k) {
  require_alpha_in_range(alpha, k);
  const double x = std::sin(alpha) * std::sin(alpha);
  const double num = 16.0 * (k - 1.0) * x * x - 4.0 * k * k * x + k * k;
  const double den = 16.0 * (k - 1.0) * x * x - 8.0 * k * x - k * k;
  if (den == 0.0 && num == 0.0) {
    // Shared root at K = 4, sin^2 = 1: take the ratio of x-derivatives.
    return (32.0 * (k - 1.0) * x - 4.0 * k * k) / (32.0 * (k - 1.0) * x - 8.0 * k);
  }
  return num / den;
}

double objective_double_prime(double alpha, double k) {
  require_alpha_in_range(alpha, k);
  const double x = std::sin(alpha) * std::sin(alpha);
  const double c = std::cos(2.0 * alpha);
  const double den = 16.0 * (k - 1.0) * x * x - 8.0 * k * x - k * k;
  const double num = 4.0 * k * std::sin(2.0 * alpha) *
                     (4.0 * (k - 1.0) * (k - 2.0) * c * c + 16.0 * (k - 1.0) * c +
                      (k - 2.0) * (k - 2.0) * (k + 2.0));
  return num / (den * den);
}

double objective_prime_numeric(double alpha, double k, double step) {
  require_block_count(k, "objective_prime_numeric");
  return (f_unchecked(alpha + step, k) - f_unchecked(alpha - step, k)) / (2.0 * step);
}

double saddle_cubic_coefficient(double half_width, int samples) {
  constexpr double k = 2.0;
  const double center = kPi / 4.0;
  const double f0 = f_unchecked(center, k);
  // Fit f(c + d) - f(c) = sum_{p=1..5} a_p d^p; the continuation past pi/4 is
  // analytic, so both sides are sampled.
  Eigen::MatrixXd design(samples, 5);
  Eigen::VectorXd rhs(samples);
  for (int i = 0; i < samples; ++i) {
    const double d = -half_width + 2.0 * half_width * i / (samples - 1);
    double power = 1.0;
    for (int p = 0; p < 5; ++p) {
      power *= d;
      design(i, p) = power;
    }
    rhs(i) = f_unchecked(center + d, k) - f0;
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
  return coeffs(2);
}

MinimizationReport verify_local_min(double k) {
  require_block_count(k, "verify_local_min");
  MinimizationReport r;
  r.k = k;
  r.alpha_star = alpha_opt(k);
  const double upper = alpha_upper_bound(k);
  // alpha(2) coincides with alpha_B(2); rounding may put it a hair above.
  r.alpha_star = std::min(r.alpha_star, upper);
  r.f_value = objective(r.alpha_star, k);
  r.f_prime_at_star = objective_prime(r.alpha_star, k);
  r.f_double_prime_at_star = objective_double_prime(r.alpha_star, k);
  r.f_at_zero = objective(0.0, k);
  r.f_at_upper = objective(upper, k);

  constexpr double kStationary = 1e-9;
  if (k == 2.0) {
    r.cubic_coefficient = saddle_cubic_coefficient();
    r.local_min_holds = std::abs(r.f_prime_at_star) <= kStationary &&
                        std::abs(r.f_double_prime_at_star) <= kStationary &&
                        std::abs(r.cubic_coefficient + 4.0 / 6.0) <= 1e-4;
  } else {
    r.local_min_holds =
        std::abs(r.f_prime_at_star) <= kStationary && r.f_double_prime_at_star > 0.0;
  }
  r.global_min_holds = r.f_value <= std::min(r.f_at_zero, r.f_at_upper) + 1e-12;

  constexpr int kGrid = 2000;
  const double step = upper / kGrid;
  double prev = objective_prime(0.5 * step, k);
  for (int i = 1; i < kGrid; ++i) {
    const double a = (i + 0.5) * step;
    const double cur = objective_prime(std::min(a, upper), k);
    if (std::signbit(cur) != std::signbit(prev) && std::abs(a - r.alpha_star) > 2.0 * step) {
      r.unexpected_critical_points.push_back(a - 0.5 * step);
    }
    prev = cur;
  }
  return r;
}

double lemma1_margin(double x) {
  require_block_count(x, "lemma1_margin");
  return kPi / 4.0 + alpha_opt(x) / 2.0 - eta_opt(x);
}

double lemma1_aux(double x) {
  require_block_count(x, "lemma1_aux");
  const double r = std::sqrt(3.0 * x - 4.0);
  return 3.0 / r - std::atan2(r, x - 2.0);
}

double lemma2_slope(double x) {
  require_block_count(x, "lemma2_slope");
  const double r = std::sqrt(3.0 * x - 4.0);
  return r / (x - 1.0) - std::atan2(r, x - 2.0);
}

double asymptotic_alpha(double x) {
  return kPi / 6.0 + 1.0 / (2.0 * kSqrt3 * x) + 5.0 * kSqrt3 / ((6.0 * x) * (6.0 * x));
}

double asymptotic_eta(double x) {
  return kSqrt3 / 2.0 + 1.0 / (2.0 * kSqrt3 * x) + 11.0 * kSqrt3 / (90.0 * x * x);
}

double asymptotic_gap(double k, double k2, GapRegime regime) {
  require_block_count(k, "asymptotic_gap");
  require_block_count(k2, "asymptotic_gap");
  switch (regime) {
    case GapRegime::kFirstLevelSmaller:
      return (kPi / 3.0 - kSqrt3 / 2.0) / std::sqrt(k);
    case GapRegime::kSecondLevelSmaller:
      return 1.0 / (20.0 * kSqrt3) / std::sqrt(k) * std::pow(k2, -2.5);
  }
  throw Error(ErrorCode::kDomain, "unknown asymptotic regime");
}

}  // namespace grk
