#include "grk/schedule_calculus.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "grk/error.hpp"
#include "grk/optimizer.hpp"

namespace grk {

namespace {

constexpr double kPi = std::numbers::pi;

void require_block_count(double k, const char* what) {
  if (!(k >= 2.0)) {
    std::ostringstream os;
    os << what << " needs a block count >= 2, got " << k;
    throw Error(ErrorCode::kDomain, os.str());
  }
}

void require_levels(std::span<const double> levels) {
  if (levels.empty()) throw Error(ErrorCode::kDomain, "hierarchy needs at least one level");
  for (double k : levels) require_block_count(k, "hierarchy level");
}

double alpha_minus_eta(double k) { return alpha_opt(k) - eta_opt(k); }

double product(std::span<const double> levels) {
  double p = 1.0;
  for (double k : levels) p *= k;
  return p;
}

}  // namespace

void HierarchySpec::validate() const {
  if (levels.empty()) throw Error(ErrorCode::kDomain, "hierarchy needs at least one level");
  for (auto k : levels) {
    if (k < 2) {
      throw Error(ErrorCode::kDomain,
                  "hierarchy level " + std::to_string(k) + " is below 2");
    }
  }
}

std::uint64_t HierarchySpec::product() const {
  std::uint64_t p = 1;
  for (auto k : levels) p *= k;
  return p;
}

std::vector<double> to_real_levels(const HierarchySpec& spec) {
  spec.validate();
  return {spec.levels.begin(), spec.levels.end()};
}

double alpha_opt(double k) {
  require_block_count(k, "alpha_opt");
  if (std::isinf(k)) return kPi / 6.0;
  return 0.5 * std::acos((k - 2.0) / (2.0 * (k - 1.0)));
}

double eta_opt(double k) {
  require_block_count(k, "eta_opt");
  if (std::isinf(k)) return std::numbers::sqrt3 / 2.0;
  // atan2 resolves k = 2 as arctan(+inf) = pi/2.
  return 0.5 * std::sqrt(k) * std::atan2(std::sqrt(3.0 * k - 4.0), k - 2.0);
}

double eta_of_alpha_unchecked(double alpha, double k) {
  // K - 4 sin^2(a) written as (K - 2) + 2 cos(2a) is exact at the singular
  // points a = pi/4, pi/3, pi/2 for K = 2, 3, 4.
  const double num = 2.0 * std::sqrt(k) * std::sin(2.0 * alpha);
  const double den = (k - 2.0) + 2.0 * std::cos(2.0 * alpha);
  return 0.5 * std::sqrt(k) * std::atan2(num, den);
}

double eta_of_alpha(double alpha, double k) {
  require_block_count(k, "eta_of_alpha");
  const double upper = alpha_upper_bound(k);
  constexpr double kSlack = 1e-12;
  if (!(alpha >= -kSlack && alpha <= upper + kSlack)) {
    std::ostringstream os;
    os << "alpha=" << alpha << " outside [0, " << upper << "] for K=" << k;
    throw Error(ErrorCode::kRange, os.str());
  }
  return eta_of_alpha_unchecked(alpha, k);
}

QueryCoefficient s_coeff(double k) {
  require_block_count(k, "s_coeff");
  return {kPi / 4.0 + alpha_minus_eta(k) / std::sqrt(k)};
}

QueryCoefficient sbar_coeff(double k_prev, double k) {
  require_block_count(k_prev, "sbar_coeff");
  require_block_count(k, "sbar_coeff");
  return {kPi / 4.0 - alpha_opt(k_prev) / 2.0 + alpha_minus_eta(k) / std::sqrt(k)};
}

QueryCoefficient t_coeff(double k1, double k2) {
  const double levels[] = {k1, k2};
  return t_coeff_multi(levels);
}

QueryCoefficient t_coeff_multi(std::span<const double> levels) {
  require_levels(levels);
  double total = kPi / 4.0;
  double prod = 1.0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    prod *= levels[i];
    total += (kPi / 4.0 + alpha_opt(levels[i]) / 2.0 - eta_opt(levels[i])) / std::sqrt(prod);
  }
  prod *= levels.back();
  total += alpha_minus_eta(levels.back()) / std::sqrt(prod);
  return {total};
}

QueryCoefficient t_coeff_multi(const HierarchySpec& spec) {
  return t_coeff_multi(to_real_levels(spec));
}

QueryCoefficient s_direct_multi(std::span<const double> levels) {
  require_levels(levels);
  return s_coeff(product(levels));
}

QueryCoefficient s_direct_multi(const HierarchySpec& spec) {
  return s_direct_multi(to_real_levels(spec));
}

double hierarchy_gap(std::span<const double> levels) {
  return t_coeff_multi(levels).value - s_direct_multi(levels).value;
}

double hierarchy_gap(const HierarchySpec& spec) { return hierarchy_gap(to_real_levels(spec)); }

GapDecomposition gap_decomposition(std::span<const double> levels) {
  require_levels(levels);
  GapDecomposition d;
  double prod = 1.0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    prod *= levels[i];
    d.lemma1_terms.push_back(
        (kPi / 4.0 + alpha_opt(levels[i]) / 2.0 - eta_opt(levels[i])) / std::sqrt(prod));
  }
  prod *= levels.back();
  d.lemma2_term = (alpha_minus_eta(levels.back()) - alpha_minus_eta(prod)) / std::sqrt(prod);
  d.total = d.lemma2_term;
  for (double t : d.lemma1_terms) d.total += t;
  return d;
}

double full_search_queries(double n_items) { return kPi / 4.0 * std::sqrt(n_items); }

NaiveQueries naive_queries(double n_items, double k) {
  require_block_count(k, "naive_queries");
  const double full = full_search_queries(n_items);
  return {(k - 1.0) / std::sqrt(k) * full, std::sqrt(k) / 2.0 * full};
}

double binary_queries(double n_items, std::uint64_t k) {
  if (k < 2 || (k & (k - 1)) != 0) {
    throw Error(ErrorCode::kDomain,
                "binary search needs K = 2^k with k >= 1, got K=" + std::to_string(k));
  }
  double sum = 0.0;
  for (std::uint64_t block = 2; block <= k; block *= 2) sum += 1.0 / std::sqrt(static_cast<double>(block));
  return full_search_queries(n_items) * sum;
}

double complement_queries(double n_items, double k) {
  require_block_count(k, "complement_queries");
  return full_search_queries(n_items) * std::sqrt((k - 1.0) / k);
}

}  // namespace grk
