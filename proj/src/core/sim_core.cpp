#include "grk/sim_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "grk/error.hpp"

namespace grk {

namespace {

struct ClassWeights {
  double rest;     // sqrt(b - 1)
  double outside;  // sqrt((K - 1) b)
};

ClassWeights class_weights(const DatabaseGeometry& g) {
  return {std::sqrt(static_cast<double>(g.block_size() - 1)),
          std::sqrt(static_cast<double>((g.n_blocks() - 1) * g.block_size()))};
}

Eigen::Matrix3d matrix_power(Eigen::Matrix3d base, std::uint64_t exponent) {
  Eigen::Matrix3d result = Eigen::Matrix3d::Identity();
  while (exponent > 0) {
    if (exponent & 1U) result = base * result;
    base = base * base;
    exponent >>= 1U;
  }
  return result;
}

bool is_integral(double x) { return std::floor(x) == x; }

void require_finite_nonnegative(double j, const char* name) {
  if (!std::isfinite(j) || j < 0.0) {
    std::ostringstream os;
    os << name << " must be finite and non-negative, got " << j;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

}  // namespace

DatabaseGeometry::DatabaseGeometry(std::uint64_t n_items, std::uint64_t n_blocks)
    : n_items_(n_items), n_blocks_(n_blocks), block_size_(0) {
  if (n_items == 0 || n_blocks == 0) {
    throw Error(ErrorCode::kInvalidGeometry, "N and K must both be positive, got N=" +
                                                 std::to_string(n_items) + " K=" +
                                                 std::to_string(n_blocks));
  }
  if (n_items % n_blocks != 0) {
    std::ostringstream os;
    os << "K=" << n_blocks << " does not divide N=" << n_items << " (nearest valid N: "
       << n_items / n_blocks * n_blocks << " or " << (n_items / n_blocks + 1) * n_blocks << ")";
    throw Error(ErrorCode::kInvalidGeometry, os.str());
  }
  block_size_ = n_items / n_blocks;
}

void DatabaseGeometry::require_partial() const {
  if (n_blocks_ < 2) {
    throw Error(ErrorCode::kInvalidGeometry,
                "partial search needs at least 2 blocks, got K=" +
                    std::to_string(n_blocks_));
  }
}

RotationAngles RotationAngles::of(const DatabaseGeometry& g) {
  return {std::asin(1.0 / std::sqrt(static_cast<double>(g.n_items()))),
          std::asin(1.0 / std::sqrt(static_cast<double>(g.block_size())))};
}

RotationAngles RotationAngles::large_block_limit(const DatabaseGeometry& g) {
  return {1.0 / std::sqrt(static_cast<double>(g.n_items())),
          1.0 / std::sqrt(static_cast<double>(g.block_size()))};
}

Eigen::Vector3d SymmetricState::coefficients() const {
  const auto w = class_weights(geometry);
  return {amp_target, w.rest * amp_target_rest, w.outside * amp_outside};
}

SymmetricState SymmetricState::from_coefficients(const DatabaseGeometry& g,
                                                 const Eigen::Vector3d& c) {
  const auto w = class_weights(g);
  SymmetricState s{g};
  s.amp_target = c[0];
  s.amp_target_rest = w.rest > 0.0 ? c[1] / w.rest : 0.0;
  s.amp_outside = w.outside > 0.0 ? c[2] / w.outside : 0.0;
  return s;
}

double SymmetricState::norm_squared() const { return coefficients().squaredNorm(); }

Eigen::Vector3d uniform_coefficients(const DatabaseGeometry& g) {
  const auto w = class_weights(g);
  return Eigen::Vector3d(1.0, w.rest, w.outside) /
         std::sqrt(static_cast<double>(g.n_items()));
}

Eigen::Matrix3d oracle_reflection() {
  return Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
}

Eigen::Matrix3d uniform_reflection(const DatabaseGeometry& g) {
  const Eigen::Vector3d s1 = uniform_coefficients(g);
  return Eigen::Matrix3d::Identity() - 2.0 * s1 * s1.transpose();
}

Eigen::Matrix3d block_reflection(const DatabaseGeometry& g) {
  const double b = static_cast<double>(g.block_size());
  const Eigen::Vector2d s2(std::sqrt(1.0 / b), std::sqrt((b - 1.0) / b));
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m.topLeftCorner<2, 2>() = Eigen::Matrix2d::Identity() - 2.0 * s2 * s2.transpose();
  // Non-target blocks hold their own block-uniform state, which the
  // blockwise reflection negates.
  m(2, 2) = -1.0;
  return m;
}

Eigen::Matrix3d global_iteration_matrix(const DatabaseGeometry& g) {
  return -uniform_reflection(g) * oracle_reflection();
}

Eigen::Matrix3d local_iteration_matrix(const DatabaseGeometry& g) {
  return -block_reflection(g) * oracle_reflection();
}

SymmetricState uniform_state(const DatabaseGeometry& g) {
  const double a = 1.0 / std::sqrt(static_cast<double>(g.n_items()));
  return SymmetricState{g, a, a, a};
}

void require_normalized(const SymmetricState& state) {
  const double n2 = state.norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    std::ostringstream os;
    os << "state is not normalized: |psi|^2 = " << n2;
    throw Error(ErrorCode::kInvalidState, os.str());
  }
}

SymmetricState apply_matrix(const SymmetricState& state, const Eigen::Matrix3d& m) {
  return SymmetricState::from_coefficients(state.geometry, m * state.coefficients());
}

SymmetricState apply_global(const SymmetricState& state, std::uint64_t times) {
  require_normalized(state);
  if (times == 0) return state;
  return apply_matrix(state, matrix_power(global_iteration_matrix(state.geometry), times));
}

SymmetricState apply_local(const SymmetricState& state, std::uint64_t times) {
  require_normalized(state);
  if (times == 0) return state;
  SymmetricState out =
      apply_matrix(state, matrix_power(local_iteration_matrix(state.geometry), times));
  // The outside class is an exact +1 eigenvector; keep the stored value
  // untouched rather than round-tripping it through the weights.
  out.amp_outside = state.amp_outside;
  return out;
}

SymmetricState global_closed_form(const DatabaseGeometry& g, double j1) {
  require_finite_nonnegative(j1, "j1");
  const double theta1 = RotationAngles::of(g).theta1;
  const double phase = (2.0 * j1 + 1.0) * theta1;
  const double n = static_cast<double>(g.n_items());
  const double rest = n > 1.0 ? std::cos(phase) / std::sqrt(n - 1.0) : 0.0;
  return SymmetricState{g, std::sin(phase), rest, rest};
}

SymmetricState evolve_global(const SymmetricState& state, double j1) {
  require_finite_nonnegative(j1, "j1");
  require_normalized(state);
  const auto& g = state.geometry;
  if (g.n_items() < 2) return apply_global(state, static_cast<std::uint64_t>(j1));

  const auto w = class_weights(g);
  const double rest_norm = std::sqrt(static_cast<double>(g.n_items() - 1));
  // Orthonormal frame: e1 = |t>, e2 = part of |s1> orthogonal to |t>,
  // e3 orthogonal to both (a -1 eigenvector of G1).
  const Eigen::Vector3d e2(0.0, w.rest / rest_norm, w.outside / rest_norm);
  const Eigen::Vector3d e3(0.0, w.outside / rest_norm, -w.rest / rest_norm);

  const Eigen::Vector3d c = state.coefficients();
  const double along_e3 = c.dot(e3);
  double e3_factor = 1.0;
  if (is_integral(j1)) {
    e3_factor = std::fmod(j1, 2.0) == 0.0 ? 1.0 : -1.0;
  } else if (std::abs(along_e3) > kSubspaceTolerance) {
    std::ostringstream os;
    os << "non-integer global power " << j1
       << " on a state with component " << along_e3
       << " outside the (target, uniform) plane";
    throw Error(ErrorCode::kMode, os.str());
  }

  const double radius = std::hypot(c[0], c.dot(e2));
  const double angle = std::atan2(c[0], c.dot(e2)) + 2.0 * j1 * RotationAngles::of(g).theta1;
  const Eigen::Vector3d out = radius * std::sin(angle) * Eigen::Vector3d::UnitX() +
                              radius * std::cos(angle) * e2 + e3_factor * along_e3 * e3;
  return SymmetricState::from_coefficients(g, out);
}

SymmetricState evolve_local(const SymmetricState& state, double j2) {
  require_finite_nonnegative(j2, "j2");
  require_normalized(state);
  const Eigen::Vector3d c = state.coefficients();
  const double radius = std::hypot(c[0], c[1]);
  const double angle =
      std::atan2(c[0], c[1]) + 2.0 * j2 * RotationAngles::of(state.geometry).theta2;
  SymmetricState out = SymmetricState::from_coefficients(
      state.geometry,
      Eigen::Vector3d(radius * std::sin(angle), radius * std::cos(angle), c[2]));
  out.amp_outside = state.amp_outside;
  return out;
}

FullSearchResult grover_full_search(std::uint64_t n_items) {
  if (n_items < 2) {
    throw Error(ErrorCode::kInvalidGeometry,
                "full search needs N >= 2, got N=" + std::to_string(n_items));
  }
  const double theta1 = std::asin(1.0 / std::sqrt(static_cast<double>(n_items)));
  const double j_full = std::numbers::pi / (4.0 * theta1) - 0.5;
  const double amp = std::sin((2.0 * std::round(j_full) + 1.0) * theta1);
  return {j_full, amp * amp};
}

double target_block_probability(const SymmetricState& state) {
  const double b = static_cast<double>(state.geometry.block_size());
  const double p = state.amp_target * state.amp_target +
                   (b - 1.0) * state.amp_target_rest * state.amp_target_rest;
  return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

FullState::FullState(std::vector<double> amplitudes, std::size_t target_index)
    : amplitudes_(std::move(amplitudes)), target_(target_index) {
  if (amplitudes_.empty() || target_ >= amplitudes_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "target index " + std::to_string(target_index) +
                    " out of range for a vector of length " +
                    std::to_string(amplitudes_.size()));
  }
}

FullState FullState::uniform(std::size_t n_items, std::size_t target_index) {
  if (n_items == 0) throw Error(ErrorCode::kInvalidGeometry, "empty database");
  return FullState(std::vector<double>(n_items, 1.0 / std::sqrt(static_cast<double>(n_items))),
                   target_index);
}

double FullState::norm() const {
  double s = 0.0;
  for (double a : amplitudes_) s += a * a;
  return std::sqrt(s);
}

void FullState::apply_oracle() { amplitudes_[target_] = -amplitudes_[target_]; }

void FullState::apply_diffusion(std::size_t block_size) {
  if (block_size == 0 || amplitudes_.size() % block_size != 0) {
    throw Error(ErrorCode::kInvalidGeometry,
                "block size " + std::to_string(block_size) + " does not tile N=" +
                    std::to_string(amplitudes_.size()));
  }
  for (std::size_t start = 0; start < amplitudes_.size(); start += block_size) {
    const auto first = amplitudes_.begin() + static_cast<std::ptrdiff_t>(start);
    const auto last = first + static_cast<std::ptrdiff_t>(block_size);
    double mean = 0.0;
    for (auto it = first; it != last; ++it) mean += *it;
    mean /= static_cast<double>(block_size);
    for (auto it = first; it != last; ++it) *it = 2.0 * mean - *it;
  }
}

void FullState::apply_grover_step(std::size_t block_size) {
  apply_oracle();
  apply_diffusion(block_size);
}

FullState FullState::restrict_to_target_block(std::size_t block_size,
                                              double* discarded) const {
  if (block_size == 0 || amplitudes_.size() % block_size != 0) {
    throw Error(ErrorCode::kInvalidGeometry, "block size does not tile the vector");
  }
  const std::size_t start = (target_ / block_size) * block_size;
  std::vector<double> block(amplitudes_.begin() + static_cast<std::ptrdiff_t>(start),
                            amplitudes_.begin() + static_cast<std::ptrdiff_t>(start + block_size));
  double kept = 0.0;
  for (double a : block) kept += a * a;
  if (discarded != nullptr) *discarded = std::max(0.0, norm() * norm() - kept);
  const double scale = 1.0 / std::sqrt(kept);
  for (double& a : block) a *= scale;
  return FullState(std::move(block), target_ - start);
}

FullState full_state_simulate(const DatabaseGeometry& g, std::size_t target_index,
                              std::span<const Step> word,
                              const FullSimulationOptions& options) {
  if (g.n_items() > options.cap) {
    std::ostringstream os;
    os << "N=" << g.n_items() << " exceeds the full-vector cap of " << options.cap;
    throw Error(ErrorCode::kCapacity, os.str());
  }
  auto state = FullState::uniform(static_cast<std::size_t>(g.n_items()), target_index);
  for (Step step : word) {
    state.apply_grover_step(static_cast<std::size_t>(
        step == Step::kGlobal ? g.n_items() : g.block_size()));
  }
  return state;
}

SymmetricState project_to_symmetric(const FullState& full, const DatabaseGeometry& g) {
  if (full.size() != g.n_items()) {
    throw Error(ErrorCode::kInvalidGeometry,
                "full state length " + std::to_string(full.size()) +
                    " does not match N=" + std::to_string(g.n_items()));
  }
  const auto amps = full.amplitudes();
  const std::size_t b = static_cast<std::size_t>(g.block_size());
  const std::size_t target_block = full.target_index() / b;

  double rest_sum = 0.0, outside_sum = 0.0;
  std::size_t rest_n = 0, outside_n = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i == full.target_index()) continue;
    if (i / b == target_block) {
      rest_sum += amps[i];
      ++rest_n;
    } else {
      outside_sum += amps[i];
      ++outside_n;
    }
  }
  const double rest = rest_n ? rest_sum / static_cast<double>(rest_n) : 0.0;
  const double outside = outside_n ? outside_sum / static_cast<double>(outside_n) : 0.0;

  double worst = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i == full.target_index()) continue;
    const double ref = (i / b == target_block) ? rest : outside;
    worst = std::max(worst, std::abs(amps[i] - ref));
  }
  if (worst > kSubspaceTolerance) {
    std::ostringstream os;
    os << "full state leaves the symmetric subspace (max deviation " << worst << ")";
    throw SubspaceViolation(worst, os.str());
  }
  SymmetricState s{g, amps[full.target_index()], rest, outside};
  if (rest_n == 0) s.amp_target_rest = 0.0;
  return s;
}

}  // namespace grk
