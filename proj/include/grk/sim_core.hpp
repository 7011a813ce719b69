#pragma once

// Exact evolution of a single-target database under global and local Grover
// iterations.
//
// Two representations are kept side by side:
//  * SymmetricState - the invariant 3-dimensional subspace spanned by the
//    target item, the uniform superposition of the rest of the target block,
//    and the uniform superposition of all items outside the target block.
//  * FullState      - the literal N-dimensional amplitude vector, used as a
//    brute-force cross-check.
//
// Every operator involved is a real reflection, so amplitudes are real.
// Symmetric-basis ordering is always (target, rest-of-target-block, outside).

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace grk {

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kSubspaceTolerance = 1e-9;
inline constexpr std::size_t kDefaultFullVectorCap = 4096;

class DatabaseGeometry {
 public:
  // Single-item database.
  DatabaseGeometry() : DatabaseGeometry(1, 1) {}
  // Throws Error(kInvalidGeometry) unless n_blocks >= 1 divides n_items >= 1.
  DatabaseGeometry(std::uint64_t n_items, std::uint64_t n_blocks);

  std::uint64_t n_items() const noexcept { return n_items_; }
  std::uint64_t n_blocks() const noexcept { return n_blocks_; }
  std::uint64_t block_size() const noexcept { return block_size_; }

  // Partial search needs at least two blocks.
  void require_partial() const;

  friend bool operator==(const DatabaseGeometry&, const DatabaseGeometry&) = default;

 private:
  std::uint64_t n_items_;
  std::uint64_t n_blocks_;
  std::uint64_t block_size_;
};

struct RotationAngles {
  double theta1;  // sin^2 = 1/N
  double theta2;  // sin^2 = 1/b

  static RotationAngles of(const DatabaseGeometry& geometry);
  // theta1 -> 1/sqrt(N), theta2 -> 1/sqrt(b).
  static RotationAngles large_block_limit(const DatabaseGeometry& geometry);
};

// Per-item amplitudes. Conversion to orthonormal-basis coefficients multiplies
// by (1, sqrt(b-1), sqrt((K-1)b)).
struct SymmetricState {
  DatabaseGeometry geometry;
  double amp_target = 0.0;
  double amp_target_rest = 0.0;
  double amp_outside = 0.0;

  Eigen::Vector3d coefficients() const;
  static SymmetricState from_coefficients(const DatabaseGeometry& geometry,
                                          const Eigen::Vector3d& c);
  double norm_squared() const;
};

// Basis vectors and operators in the orthonormal symmetric basis.
Eigen::Vector3d uniform_coefficients(const DatabaseGeometry& geometry);
Eigen::Matrix3d oracle_reflection();
Eigen::Matrix3d uniform_reflection(const DatabaseGeometry& geometry);
// Direct sum over blocks of the reflection about each block's uniform state.
Eigen::Matrix3d block_reflection(const DatabaseGeometry& geometry);
Eigen::Matrix3d global_iteration_matrix(const DatabaseGeometry& geometry);
Eigen::Matrix3d local_iteration_matrix(const DatabaseGeometry& geometry);

SymmetricState uniform_state(const DatabaseGeometry& geometry);

// Throws Error(kInvalidState) when |norm^2 - 1| exceeds kNormTolerance.
void require_normalized(const SymmetricState& state);

SymmetricState apply_matrix(const SymmetricState& state, const Eigen::Matrix3d& m);
SymmetricState apply_global(const SymmetricState& state, std::uint64_t times);
SymmetricState apply_local(const SymmetricState& state, std::uint64_t times);

// G1^j1 |s1> for real j1 >= 0.
SymmetricState global_closed_form(const DatabaseGeometry& geometry, double j1);

// Real-power evolution. Global powers rotate the (target, s1) plane by 2*theta1
// per unit; the direction orthogonal to both picks up (-1)^j, so a non-integer
// power requires that component to vanish (Error(kMode) otherwise).
SymmetricState evolve_global(const SymmetricState& state, double j1);
// Local powers rotate the target-block sector by 2*theta2 per unit.
SymmetricState evolve_local(const SymmetricState& state, double j2);

struct FullSearchResult {
  double j_full;               // pi/(4 theta1) - 1/2
  double success_probability;  // at round(j_full)
};
FullSearchResult grover_full_search(std::uint64_t n_items);

double target_block_probability(const SymmetricState& state);

// ---------------------------------------------------------------------------
// Full-vector oracle.

class FullState {
 public:
  FullState(std::vector<double> amplitudes, std::size_t target_index);
  static FullState uniform(std::size_t n_items, std::size_t target_index);

  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::size_t target_index() const noexcept { return target_; }
  double norm() const;

  void apply_oracle();
  // Inversion about the mean inside every consecutive block of block_size.
  void apply_diffusion(std::size_t block_size);
  // -I_s I_t with the reflection taken blockwise.
  void apply_grover_step(std::size_t block_size);

  // The block of length block_size holding the target, renormalized.
  // Reports the discarded probability through `discarded` when non-null.
  FullState restrict_to_target_block(std::size_t block_size,
                                     double* discarded = nullptr) const;

 private:
  std::vector<double> amplitudes_;
  std::size_t target_;
};

enum class Step { kGlobal, kLocal };

struct FullSimulationOptions {
  std::size_t cap = kDefaultFullVectorCap;
};

FullState full_state_simulate(const DatabaseGeometry& geometry,
                              std::size_t target_index,
                              std::span<const Step> word,
                              const FullSimulationOptions& options = {});

// Throws SubspaceViolation carrying the largest deviation from a class mean.
SymmetricState project_to_symmetric(const FullState& full,
                                    const DatabaseGeometry& geometry);

}  // namespace grk
