// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "grk/grk_c.h"

TEST(CApi, StatusStringsAndVersion) {
  EXPECT_STREQ(grk_status_string(GRK_OK), "ok");
  EXPECT_NE(std::string(grk_status_string(GRK_ERR_INVALID_GEOMETRY)), "ok");
  EXPECT_GT(std::strlen(grk_version()), 0u);
}

TEST(CApi, GeometryErrorsCarryMessages) {
  std::uint64_t b = 0;
  EXPECT_EQ(grk_geometry_check({100, 4}, &b), GRK_OK);
  EXPECT_EQ(b, 25u);
  EXPECT_EQ(grk_geometry_check({63, 2}, &b), GRK_ERR_INVALID_GEOMETRY);
  EXPECT_EQ(b, 25u);
  EXPECT_NE(std::string(grk_last_error()).find("63"), std::string::npos);
}

TEST(CApi, NullOutputIsInvalidArgument) {
  EXPECT_EQ(grk_uniform_state({16, 4}, nullptr), GRK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(grk_alpha_opt(4.0, nullptr), GRK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, RunOptimalSchedule) {
  const grk_geometry g{1000000, 4};
  grk_schedule s{};
  ASSERT_EQ(grk_optimal_integer_schedule(g, &s), GRK_OK);
  EXPECT_EQ(s.j1, std::floor(s.j1));
  grk_result r{};
  ASSERT_EQ(grk_run(g, &s, GRK_MODE_OPERATOR_POWER, &r), GRK_OK);
  double p = 0.0;
  ASSERT_EQ(grk_target_block_probability(&r.final_state, &p), GRK_OK);
  EXPECT_GE(p, 0.999);
  EXPECT_EQ(r.queries_used, s.j1 + s.j2 + 1);

  grk_schedule fractional{3.5, 1.0, GRK_FINAL_G1};
  EXPECT_EQ(grk_run(g, &fractional, GRK_MODE_OPERATOR_POWER, &r), GRK_ERR_MODE);
}

TEST(CApi, FullSimulationAgrees) {
  const grk_geometry g{64, 4};
  const grk_step word[] = {GRK_STEP_GLOBAL, GRK_STEP_LOCAL, GRK_STEP_LOCAL, GRK_STEP_GLOBAL};
  grk_state projected{};
  double dev = -1.0;
  ASSERT_EQ(grk_full_simulate(g, 5, word, 4, 1024, &projected, &dev), GRK_OK);
  EXPECT_LE(dev, 1e-12);
  grk_schedule s{1, 2, GRK_FINAL_G1};
  grk_result r{};
  ASSERT_EQ(grk_run(g, &s, GRK_MODE_OPERATOR_POWER, &r), GRK_OK);
  EXPECT_NEAR(projected.amp_target, r.final_state.amp_target, 1e-12);
  EXPECT_EQ(grk_full_simulate(g, 5, word, 4, 32, &projected, &dev), GRK_ERR_CAPACITY);
}

TEST(CApi, FinalVariantsRejectFractionalCounts) {
  grk_final_variants v{};
  EXPECT_EQ(grk_compare_final_variants({10000, 4}, 40, 20, &v), GRK_OK);
  EXPECT_EQ(v.queries_is1_only + 1, v.queries_g1);
  EXPECT_EQ(grk_compare_final_variants({10000, 4}, 40.5, 20, &v), GRK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(grk_compare_final_variants({10000, 4}, -1, 20, &v), GRK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Coefficients) {
  double v = 0.0;
  ASSERT_EQ(grk_s_coeff(4, &v), GRK_OK);
  EXPECT_NEAR(v, 0.615480, 1e-6);
  const double levels[] = {2, 2};
  ASSERT_EQ(grk_t_coeff(levels, 2, &v), GRK_OK);
  EXPECT_NEAR(v, 0.670379, 1e-6);
  ASSERT_EQ(grk_hierarchy_gap(levels, 2, &v), GRK_OK);
  EXPECT_NEAR(v, 0.054899, 1e-6);
  double l1 = 0.0, l2 = 0.0, total = 0.0;
  ASSERT_EQ(grk_gap_decomposition(levels, 2, &l1, &l2, &total), GRK_OK);
  EXPECT_NEAR(l1 + l2, total, 1e-15);
  ASSERT_EQ(grk_alpha_upper_bound(INFINITY, &v), GRK_OK);
  EXPECT_NEAR(v, 0.947747, 1e-6);
  EXPECT_EQ(grk_alpha_opt(1.0, &v), GRK_ERR_DOMAIN);
  EXPECT_EQ(grk_asymptotic_gap(4, 4, 9, &v), GRK_ERR_DOMAIN);
  EXPECT_EQ(grk_t_coeff(levels, 0, &v), GRK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, MinimizationReport) {
  grk_min_report r{};
  ASSERT_EQ(grk_verify_local_min(2, &r), GRK_OK);
  EXPECT_NEAR(r.cubic_coefficient, -2.0 / 3.0, 1e-4);
  ASSERT_EQ(grk_verify_local_min(5, &r), GRK_OK);
  EXPECT_TRUE(r.local_min_holds);
  EXPECT_TRUE(std::isnan(r.cubic_coefficient));
  EXPECT_EQ(r.unexpected_critical_points, 0u);
}

TEST(CApi, HierarchyHandle) {
  const std::uint64_t levels[] = {2, 2};
  grk_hierarchy_run* run = nullptr;
  ASSERT_EQ(grk_hierarchy_create(1 << 20, levels, 2, GRK_NEGATIVE_J1_CLAMP_AND_RESOLVE_J2, &run),
            GRK_OK);
  ASSERT_EQ(grk_hierarchy_level_count(run), 2u);
  grk_level_info second{};
  ASSERT_EQ(grk_hierarchy_level(run, 1, &second), GRK_OK);
  EXPECT_TRUE(second.j1_clamped);
  EXPECT_TRUE(second.j2_resolved);
  EXPECT_EQ(grk_hierarchy_level(run, 2, &second), GRK_ERR_RANGE);
  grk_hierarchy_summary sum{};
  ASSERT_EQ(grk_hierarchy_summarize(run, &sum), GRK_OK);
  EXPECT_GE(sum.success_probability, 0.99);
  EXPECT_GT(sum.total_queries, sum.direct_equivalent.queries_used);
  grk_hierarchy_destroy(run);
  grk_hierarchy_destroy(nullptr);

  const std::uint64_t bad[] = {3, 2};
  run = nullptr;
  EXPECT_EQ(grk_hierarchy_create(1000, bad, 2, GRK_NEGATIVE_J1_CLAMP_ONLY, &run),
            GRK_ERR_INVALID_GEOMETRY);
  EXPECT_EQ(run, nullptr);
}

TEST(CApi, GapChecks) {
  grk_gap_check c{};
  ASSERT_EQ(grk_theorem_check(3, 3, &c), GRK_OK);
  EXPECT_NEAR(c.gap, 0.070211, 1e-6);
  EXPECT_TRUE(c.holds);
  const std::uint64_t levels[] = {2, 2, 2, 2};
  ASSERT_EQ(grk_corollary_check(levels, 4, &c), GRK_OK);
  EXPECT_TRUE(c.holds);
}

TEST(CApi, PartitionCountBuffer) {
  std::size_t needed = 0;
  double log2_value = 0.0;
  ASSERT_EQ(grk_partition_count(6, 3, 10000, nullptr, 0, &needed, &log2_value), GRK_OK);
  EXPECT_EQ(needed, 3u);
  char small[2];
  EXPECT_EQ(grk_partition_count(6, 3, 10000, small, sizeof small, &needed, nullptr),
            GRK_ERR_CAPACITY);
  char buf[8];
  ASSERT_EQ(grk_partition_count(6, 3, 10000, buf, sizeof buf, nullptr, nullptr), GRK_OK);
  EXPECT_STREQ(buf, "15");
  ASSERT_EQ(grk_partition_count(20000, 2, 10000, nullptr, 0, &needed, &log2_value), GRK_OK);
  EXPECT_EQ(needed, 0u);
  EXPECT_GT(log2_value, 19000.0);

  std::uint64_t bits = 99;
  double asym = 0.0;
  ASSERT_EQ(grk_ancilla_bits(4, 2, 10000, &bits, &asym), GRK_OK);
  EXPECT_EQ(bits, 2u);
  EXPECT_EQ(grk_ancilla_bits(10, 4, 10000, &bits, &asym), GRK_ERR_DOMAIN);
}

TEST(CApi, TableHandle) {
  grk_table* t = nullptr;
  ASSERT_EQ(grk_table_create("table2", &t), GRK_OK);
  EXPECT_EQ(grk_table_rows(t), 7u);
  EXPECT_STREQ(grk_table_column_name(t, 0), "k");
  EXPECT_EQ(grk_table_column_name(t, 99), nullptr);
  EXPECT_TRUE(grk_table_within_tolerance(t));
  double v = 0.0;
  EXPECT_EQ(grk_table_value(t, 100, 0, &v), GRK_ERR_RANGE);
  grk_table_destroy(t);
  EXPECT_EQ(grk_table_create("table9", &t), GRK_ERR_INVALID_ARGUMENT);
}
