#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "grk/error.hpp"
#include "grk/sim_core.hpp"
#include "oracles.hpp"

using namespace grk;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_state_near(const SymmetricState& a, const SymmetricState& b, double tol) {
  EXPECT_NEAR(a.amp_target, b.amp_target, tol);
  EXPECT_NEAR(a.amp_target_rest, b.amp_target_rest, tol);
  EXPECT_NEAR(a.amp_outside, b.amp_outside, tol);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Geometry, BlockSizeAndValidation) {
  const DatabaseGeometry g(100, 4);
  EXPECT_EQ(g.block_size(), 25u);
  EXPECT_EQ(code_of([] { DatabaseGeometry(63, 2); }), ErrorCode::kInvalidGeometry);
  EXPECT_EQ(code_of([] { DatabaseGeometry(0, 1); }), ErrorCode::kInvalidGeometry);
  EXPECT_EQ(code_of([] { DatabaseGeometry(8, 0); }), ErrorCode::kInvalidGeometry);
  EXPECT_EQ(code_of([] { DatabaseGeometry(8, 1).require_partial(); }),
            ErrorCode::kInvalidGeometry);
}

TEST(Geometry, RotationAngles) {
  const DatabaseGeometry g(1000, 10);
  const auto a = RotationAngles::of(g);
  EXPECT_NEAR(std::pow(std::sin(a.theta1), 2), 1.0 / 1000, 1e-14);
  EXPECT_NEAR(std::pow(std::sin(a.theta2), 2), 1.0 / 100, 1e-14);
  const auto lim = RotationAngles::large_block_limit(g);
  EXPECT_DOUBLE_EQ(lim.theta1, 1.0 / std::sqrt(1000.0));
  EXPECT_DOUBLE_EQ(lim.theta2, 0.1);
}

TEST(UniformState, Examples) {
  const auto s4 = uniform_state(DatabaseGeometry(4, 2));
  EXPECT_DOUBLE_EQ(s4.amp_target, 0.5);
  EXPECT_DOUBLE_EQ(s4.amp_target_rest, 0.5);
  EXPECT_DOUBLE_EQ(s4.amp_outside, 0.5);
  const auto s100 = uniform_state(DatabaseGeometry(100, 4));
  EXPECT_NEAR(s100.amp_outside, 0.1, 1e-15);
  const auto big = uniform_state(DatabaseGeometry(1000000, 10));
  EXPECT_NEAR(big.amp_target, 1e-3, 1e-15);
  EXPECT_NO_THROW(require_normalized(big));
}

TEST(ApplyGlobal, Examples) {
  const DatabaseGeometry g4(4, 4);
  const auto u = uniform_state(g4);
  expect_state_near(apply_global(u, 0), u, 0.0);
  const auto one = apply_global(u, 1);
  EXPECT_NEAR(one.amp_target, 1.0, 1e-14);
  EXPECT_NEAR(one.amp_outside, 0.0, 1e-14);

  const DatabaseGeometry g16(16, 4);
  expect_state_near(apply_global(uniform_state(g16), 3), global_closed_form(g16, 3), 1e-12);
}

TEST(ApplyGlobal, RejectsUnnormalizedState) {
  auto s = uniform_state(DatabaseGeometry(16, 4));
  s.amp_target *= 1.01;
  EXPECT_EQ(code_of([&] { apply_global(s, 1); }), ErrorCode::kInvalidState);
  EXPECT_EQ(code_of([&] { apply_local(s, 1); }), ErrorCode::kInvalidState);
}

TEST(ApplyLocal, Examples) {
  const DatabaseGeometry g(64, 4);
  const auto u = uniform_state(g);
  expect_state_near(apply_local(u, 0), u, 0.0);

  const auto mixed = apply_global(u, 2);
  EXPECT_EQ(apply_local(mixed, 7).amp_outside, mixed.amp_outside);

  const auto symmetric = apply_local(mixed, 1);
  const std::vector<Step> word{Step::kGlobal, Step::kGlobal, Step::kLocal};
  expect_state_near(project_to_symmetric(full_state_simulate(g, 5, word), g), symmetric, 1e-12);
}

TEST(ApplyLocal, RotatesTargetSectorByTwoTheta2) {
  const DatabaseGeometry g(400, 4);
  const double theta2 = RotationAngles::of(g).theta2;
  const auto s = apply_local(uniform_state(g), 5);
  // Inside the target block the state starts at angle theta2 from the rest.
  const double b = static_cast<double>(g.block_size());
  const double in_block = std::sqrt(1.0 / 4.0);
  EXPECT_NEAR(s.amp_target, in_block * std::sin(11.0 * theta2), 1e-12);
  EXPECT_NEAR(s.amp_target_rest * std::sqrt(b - 1.0), in_block * std::cos(11.0 * theta2), 1e-12);
}

TEST(GlobalClosedForm, Examples) {
  const DatabaseGeometry g4(4, 2);
  expect_state_near(global_closed_form(g4, 0.0), uniform_state(g4), 1e-15);
  EXPECT_NEAR(global_closed_form(g4, 1.0).amp_target, 1.0, 1e-14);

  const DatabaseGeometry g(256, 8);
  const double theta1 = RotationAngles::of(g).theta1;
  for (int j = 1; j <= 5; ++j) {
    const auto c = global_closed_form(g, j);
    expect_state_near(c, apply_global(uniform_state(g), j), 1e-12);
    EXPECT_NEAR(c.amp_target, std::sin((2 * j + 1) * theta1), 1e-14);
    EXPECT_NEAR(c.amp_outside, std::cos((2 * j + 1) * theta1) / std::sqrt(255.0), 1e-14);
  }
}

TEST(EvolveGlobal, RealPowersAgreeWithClosedForm) {
  const DatabaseGeometry g(10000, 4);
  expect_state_near(evolve_global(uniform_state(g), 17.25), global_closed_form(g, 17.25), 1e-12);
  // Off the (t, s1) plane a fractional power is meaningless.
  const auto off = apply_local(uniform_state(g), 3);
  EXPECT_EQ(code_of([&] { evolve_global(off, 0.5); }), ErrorCode::kMode);
  expect_state_near(evolve_global(off, 2.0), apply_global(off, 2), 1e-12);
}

TEST(EvolveLocal, IntegerPowersMatchOperator) {
  const DatabaseGeometry g(900, 9);
  const auto s = apply_global(uniform_state(g), 4);
  expect_state_near(evolve_local(s, 6.0), apply_local(s, 6), 1e-12);
  EXPECT_EQ(evolve_local(s, 2.5).amp_outside, s.amp_outside);
}

TEST(FullSearch, Examples) {
  const auto four = grover_full_search(4);
  EXPECT_NEAR(four.j_full, 1.0, 1e-12);
  EXPECT_NEAR(four.success_probability, 1.0, 1e-12);

  const auto two = grover_full_search(2);
  EXPECT_NEAR(two.j_full, 0.5, 1e-12);
  EXPECT_NEAR(two.success_probability, 0.5, 1e-12);
  const double theta = RotationAngles::of(DatabaseGeometry(2, 1)).theta1;
  EXPECT_NEAR(std::pow(std::sin(theta), 2), 0.5, 1e-15);
  EXPECT_NEAR(std::pow(std::sin(3 * theta), 2), 0.5, 1e-15);

  const auto big = grover_full_search(100000000);
  EXPECT_NEAR(big.j_full / 1e4, kPi / 4, 1e-4);
  EXPECT_EQ(code_of([] { grover_full_search(1); }), ErrorCode::kInvalidGeometry);
}

TEST(FullStateSimulate, Examples) {
  const DatabaseGeometry g(64, 4);
  const auto empty = full_state_simulate(g, 3, {});
  for (double a : empty.amplitudes()) EXPECT_DOUBLE_EQ(a, 1.0 / 8.0);

  const std::vector<Step> one{Step::kGlobal};
  EXPECT_NEAR(full_state_simulate(DatabaseGeometry(4, 4), 2, one).amplitudes()[2], 1.0, 1e-14);

  FullSimulationOptions small{32};
  EXPECT_EQ(code_of([&] { full_state_simulate(g, 0, one, small); }), ErrorCode::kCapacity);
  EXPECT_THROW(full_state_simulate(g, 64, one), Error);
}

TEST(FullStateSimulate, MatchesDenseOracle) {
  const int n = 48, k = 4, target = 29;
  const std::vector<bool> word{true, false, false, true, false, true};
  std::vector<Step> steps;
  for (bool w : word) steps.push_back(w ? Step::kGlobal : Step::kLocal);
  const auto full = full_state_simulate(DatabaseGeometry(n, k), target, steps);
  const Eigen::VectorXd ref = oracle::run_word(n, k, target, word);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(full.amplitudes()[i], ref(i), 1e-13) << i;
}

TEST(ProjectToSymmetric, Examples) {
  const DatabaseGeometry g(32, 4);
  const auto u = full_state_simulate(g, 9, {});
  expect_state_near(project_to_symmetric(u, g), uniform_state(g), 1e-15);

  const std::vector<Step> word{Step::kGlobal, Step::kLocal, Step::kGlobal};
  EXPECT_NO_THROW(project_to_symmetric(full_state_simulate(g, 9, word), g));

  std::vector<double> amps(u.amplitudes().begin(), u.amplitudes().end());
  amps[20] += 1e-3;
  const FullState bumped(amps, 9);
  try {
    project_to_symmetric(bumped, g);
    FAIL() << "expected a subspace violation";
  } catch (const SubspaceViolation& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSubspaceViolation);
    EXPECT_GT(e.max_deviation(), 5e-4);
  }
}

TEST(TargetBlockProbability, Examples) {
  const DatabaseGeometry g(60, 5);
  EXPECT_NEAR(target_block_probability(uniform_state(g)), 0.2, 1e-15);
  const DatabaseGeometry full(1024, 4);
  const auto searched = apply_global(uniform_state(full), 25);
  EXPECT_NEAR(target_block_probability(searched), 1.0, 1e-3);
  SymmetricState concentrated{full, std::sin(0.6), std::cos(0.6) / std::sqrt(255.0), 0.0};
  EXPECT_NEAR(target_block_probability(concentrated), 1.0, 1e-14);
}

TEST(FullState, DiffusionAndRestriction) {
  FullState s({0.5, 0.1, 0.3, 0.7}, 0);
  s.apply_diffusion(2);
  EXPECT_NEAR(s.amplitudes()[0], 0.1, 1e-15);
  EXPECT_NEAR(s.amplitudes()[1], 0.5, 1e-15);
  double dropped = 0.0;
  const auto r = FullState::uniform(8, 5).restrict_to_target_block(4, &dropped);
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.target_index(), 1u);
  EXPECT_NEAR(dropped, 0.5, 1e-15);
  EXPECT_NEAR(r.norm(), 1.0, 1e-15);
}
