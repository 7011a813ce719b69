// grkq-cli: command-line front end for the partial-search library.
//
// Exit codes: 0 success, 2 usage, 3 domain / geometry / capacity errors,
// 4 a tolerance or assertion check failed, 5 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grk/grk_c.h"
#include "output.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kDomainError = 3, kCheckFailed = 4, kInternal = 5 };

// Library failure carrying its status.
struct Failure : std::runtime_error {
  grk_status status;
  Failure(grk_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(grk_status s) {
  if (s != GRK_OK) throw Failure(s, grk_last_error());
}

struct Options {
  std::uint64_t n = 0;
  std::string k = "";
  std::string schedule = "optimal";
  std::string final_op = "g1";
  std::string format = "csv";
  std::string out;
  bool no_timestamp = false;
  std::size_t full_vector_cap = 4096;
  std::string table;
  std::string k1_range = "2..8";
  std::string k2_range = "2..8";
  std::string negative_j1 = "resolve";
};

std::vector<std::uint64_t> parse_k_list(const std::string& text) {
  if (text.empty()) throw UsageError("--k is required");
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(v));
    } catch (const std::logic_error&) {
      throw UsageError("bad block count '" + item + "' in --k");
    }
  }
  if (out.empty()) throw UsageError("--k is empty");
  return out;
}

std::uint64_t single_k(const Options& o) {
  const auto ks = parse_k_list(o.k);
  if (ks.size() != 1) throw UsageError("this command takes a single --k value");
  return ks.front();
}

grk_final_op parse_final_op(const std::string& s) {
  if (s == "g1") return GRK_FINAL_G1;
  if (s == "it-is1") return GRK_FINAL_MINUS_IT_IS1;
  if (s == "is1") return GRK_FINAL_IS1;
  throw UsageError("--final-op must be g1, it-is1 or is1");
}

const char* final_op_name(grk_final_op op) {
  switch (op) {
    case GRK_FINAL_G1: return "g1";
    case GRK_FINAL_MINUS_IT_IS1: return "it-is1";
    case GRK_FINAL_IS1: return "is1";
  }
  return "?";
}

// "a..b" or "a".
std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  int lo = 0, hi = 0;
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " must look like a..b");
  }
  if (hi < lo) throw UsageError(std::string(flag) + " range " + text + " is empty");
  if (lo < 2 || hi > 1024) {
    throw Failure(GRK_ERR_RANGE, std::string(flag) + " must stay within [2, 1024], got " + text);
  }
  return {lo, hi};
}

std::int64_t as_int(double v) { return static_cast<std::int64_t>(std::llround(v)); }

// ---------------------------------------------------------------------------

grkq::Table cmd_simulate(const Options& o, int& code) {
  const grk_geometry g{o.n, single_k(o)};
  check(grk_geometry_check(g, nullptr));
  const grk_final_op op = parse_final_op(o.final_op);

  grk_schedule s{};
  if (o.schedule == "optimal") {
    grk_schedule real{};
    check(grk_optimal_real_schedule(g, &real));
    grk_state start{};
    check(grk_uniform_state(g, &start));
    check(grk_best_integer_schedule_near(&start, real.j1, real.j2, op, &s));
  } else {
    const auto comma = o.schedule.find(',');
    if (comma == std::string::npos) throw UsageError("--schedule must be 'optimal' or j1,j2");
    try {
      s.j1 = std::stod(o.schedule.substr(0, comma));
      s.j2 = std::stod(o.schedule.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw UsageError("--schedule must be 'optimal' or j1,j2");
    }
    s.final_op = op;
  }

  grk_result r{};
  check(grk_run(g, &s, GRK_MODE_CLOSED_FORM, &r));
  double block_p = 0.0, alpha = 0.0, eta = 0.0;
  check(grk_target_block_probability(&r.final_state, &block_p));
  check(grk_scaled_from_schedule(g, s.j1, s.j2, &alpha, &eta));

  // Brute-force cross-check on the literal vector when it is small enough.
  std::string full_check = "skipped";
  double full_dev = std::nan("");
  const bool whole = s.j1 == std::floor(s.j1) && s.j2 == std::floor(s.j2);
  if (o.n <= o.full_vector_cap && op == GRK_FINAL_G1 && whole) {
    std::vector<grk_step> word(static_cast<std::size_t>(s.j1), GRK_STEP_GLOBAL);
    word.insert(word.end(), static_cast<std::size_t>(s.j2), GRK_STEP_LOCAL);
    word.push_back(GRK_STEP_GLOBAL);
    grk_state full{};
    check(grk_full_simulate(g, 0, word.data(), word.size(), o.full_vector_cap, &full, nullptr));
    full_dev = std::max({std::abs(full.amp_target - r.final_state.amp_target),
                         std::abs(full.amp_target_rest - r.final_state.amp_target_rest),
                         std::abs(full.amp_outside - r.final_state.amp_outside)});
    full_check = full_dev <= 1e-10 ? "pass" : "fail";
    if (full_dev > 1e-10) code = kCheckFailed;
  }

  grkq::Table t{"simulate",
                {"n", "k", "block_size", "j1", "j2", "final_op", "queries_used", "amp_target",
                 "amp_target_rest", "amp_outside", "target_block_probability",
                 "leaked_probability", "implied_alpha", "implied_eta", "full_vector_check",
                 "full_vector_deviation"},
                {}};
  t.rows.push_back({std::int64_t(o.n), std::int64_t(g.n_blocks),
                    std::int64_t(o.n / g.n_blocks), s.j1, s.j2, std::string(final_op_name(op)),
                    r.queries_used, r.final_state.amp_target, r.final_state.amp_target_rest,
                    r.final_state.amp_outside, block_p, r.leaked_probability, alpha, eta,
                    full_check, full_dev});
  return t;
}

grkq::Table cmd_schedule(const Options& o) {
  const std::uint64_t k = single_k(o);
  const grk_geometry g{o.n, k};
  check(grk_geometry_check(g, nullptr));
  const double n = static_cast<double>(o.n);
  const double kd = static_cast<double>(k);
  const double root_n = std::sqrt(n);

  grk_schedule real{}, integer{};
  check(grk_optimal_real_schedule(g, &real));
  check(grk_optimal_integer_schedule(g, &integer));
  grk_result run{};
  check(grk_run(g, &integer, GRK_MODE_CLOSED_FORM, &run));
  double alpha = 0.0, eta = 0.0, s = 0.0, full = 0.0, complement = 0.0;
  check(grk_alpha_opt(kd, &alpha));
  check(grk_eta_opt(kd, &eta));
  check(grk_s_coeff(kd, &s));
  check(grk_full_search_queries(n, &full));
  check(grk_complement_queries(n, kd, &complement));
  double naive_worst = 0.0, naive_average = 0.0;
  check(grk_naive_queries(n, kd, &naive_worst, &naive_average));
  double binary = std::nan("");
  if ((k & (k - 1)) == 0) check(grk_binary_queries(n, k, &binary));

  grkq::Table t{"schedule", {"quantity", "coefficient", "queries"}, {}};
  auto add = [&](const std::string& name, double coefficient, double queries) {
    t.rows.push_back({name, coefficient, queries});
  };
  add("alpha", alpha, real.j2);
  add("eta", eta, real.j1);
  add("j1_real", real.j1 / root_n, real.j1);
  add("j2_real", real.j2 / root_n, real.j2);
  add("j1", integer.j1 / root_n, integer.j1);
  add("j2", integer.j2 / root_n, integer.j2);
  add("grk", s, run.queries_used);
  add("grk_leaked_probability", std::nan(""), run.leaked_probability);
  add("full_search", full / root_n, full);
  add("naive_worst", naive_worst / root_n, naive_worst);
  add("naive_average", naive_average / root_n, naive_average);
  add("binary", binary / root_n, binary);
  add("complement", complement / root_n, complement);
  return t;
}

grkq::Table cmd_hierarchy(const Options& o) {
  const auto ks = parse_k_list(o.k);
  grk_hierarchy_run* raw = nullptr;
  grk_negative_j1_policy policy = GRK_NEGATIVE_J1_CLAMP_AND_RESOLVE_J2;
  if (o.negative_j1 == "clamp") {
    policy = GRK_NEGATIVE_J1_CLAMP_ONLY;
  } else if (o.negative_j1 != "resolve") {
    throw UsageError("--negative-j1 must be clamp or resolve");
  }
  check(grk_hierarchy_create(o.n, ks.data(), ks.size(), policy, &raw));
  std::unique_ptr<grk_hierarchy_run, decltype(&grk_hierarchy_destroy)> run(
      raw, &grk_hierarchy_destroy);

  grkq::Table t{"hierarchy",
                {"stage", "n", "k", "block_size", "j1_formula", "j1_real", "j2_real", "j1", "j2",
                 "j1_clamped", "j2_resolved", "queries", "leaked_probability", "amp_target"},
                {}};
  for (std::size_t i = 0; i < grk_hierarchy_level_count(run.get()); ++i) {
    grk_level_info l{};
    check(grk_hierarchy_level(run.get(), i, &l));
    t.rows.push_back({std::to_string(i + 1), std::int64_t(l.geometry.n_items),
                      std::int64_t(l.geometry.n_blocks),
                      std::int64_t(l.geometry.n_items / l.geometry.n_blocks), l.j1_unclamped,
                      l.real_schedule.j1, l.real_schedule.j2, as_int(l.schedule.j1),
                      as_int(l.schedule.j2), bool(l.j1_clamped), bool(l.j2_resolved),
                      l.result.queries_used,
                      l.truncated_probability, l.result.final_state.amp_target});
  }
  grk_hierarchy_summary sum{};
  check(grk_hierarchy_summarize(run.get(), &sum));
  std::uint64_t product = 1;
  for (auto k : ks) product *= k;
  const double nan = std::nan("");
  t.rows.push_back({std::string("total"), std::int64_t(o.n), std::int64_t(product),
                    std::int64_t(o.n / product), nan, nan, nan, nan, nan, false, false,
                    sum.total_queries,
                    1.0 - sum.success_probability, nan});
  const auto& d = sum.direct_equivalent;
  t.rows.push_back({std::string("direct"), std::int64_t(o.n), std::int64_t(product),
                    std::int64_t(o.n / product), nan, nan, nan, as_int(sum.direct_schedule.j1),
                    as_int(sum.direct_schedule.j2), false, false, d.queries_used,
                    d.leaked_probability, d.final_state.amp_target});
  return t;
}

grkq::Table cmd_tables(const Options& o, int& code) {
  grk_table* raw = nullptr;
  check(grk_table_create(o.table.c_str(), &raw));
  std::unique_ptr<grk_table, decltype(&grk_table_destroy)> table(raw, &grk_table_destroy);
  grkq::Table t{o.table, {}, {}};
  const std::size_t cols = grk_table_columns(table.get());
  for (std::size_t c = 0; c < cols; ++c) t.columns.emplace_back(grk_table_column_name(table.get(), c));
  for (std::size_t r = 0; r < grk_table_rows(table.get()); ++r) {
    std::vector<grkq::Cell> row;
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      check(grk_table_value(table.get(), r, c, &v));
      // Block counts are integers (or inf).
      const bool key = t.columns[c] == "k" || t.columns[c] == "k1" || t.columns[c] == "k2";
      if (key && std::isfinite(v)) {
        row.emplace_back(as_int(v));
      } else {
        row.emplace_back(v);
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (!grk_table_within_tolerance(table.get())) {
    std::cerr << "grkq-cli: " << o.table << " deviates from the reference by "
              << grkq::format_double(grk_table_max_deviation(table.get())) << "\n";
    code = kCheckFailed;
  }
  return t;
}

grkq::Table cmd_sweep(const Options& o, int& code) {
  const auto [a1, b1] = parse_range(o.k1_range, "--k1");
  const auto [a2, b2] = parse_range(o.k2_range, "--k2");
  grkq::Table t{"sweep", {"k1", "k2", "S", "T", "gap", "lemma1_term", "lemma2_term"}, {}};
  int failures = 0;
  for (int k1 = a1; k1 <= b1; ++k1) {
    for (int k2 = a2; k2 <= b2; ++k2) {
      const double levels[] = {double(k1), double(k2)};
      double s = 0.0, tc = 0.0, gap = 0.0, l1 = 0.0, l2 = 0.0;
      check(grk_s_direct(levels, 2, &s));
      check(grk_t_coeff(levels, 2, &tc));
      check(grk_hierarchy_gap(levels, 2, &gap));
      check(grk_gap_decomposition(levels, 2, &l1, &l2, nullptr));
      if (!(gap > 0.0 && l1 > 0.0 && l2 > 0.0)) ++failures;
      t.rows.push_back({std::int64_t(k1), std::int64_t(k2), s, tc, gap, l1, l2});
    }
  }
  if (failures > 0) {
    std::cerr << "grkq-cli: " << failures << " grid points without a positive gap\n";
    code = kCheckFailed;
  }
  return t;
}

grkq::Table cmd_partitions(const Options& o) {
  const std::uint64_t k = single_k(o);
  const grk_geometry g{o.n, k};
  check(grk_geometry_check(g, nullptr));
  std::size_t needed = 0;
  double log2_value = 0.0;
  check(grk_partition_count(o.n, k, 10000, nullptr, 0, &needed, &log2_value));
  std::string exact = "";
  if (needed > 0) {
    std::vector<char> buf(needed);
    check(grk_partition_count(o.n, k, 10000, buf.data(), buf.size(), nullptr, nullptr));
    exact = buf.data();
  }
  std::uint64_t bits = 0;
  double asymptotic = 0.0;
  check(grk_ancilla_bits(o.n, k, 10000, &bits, &asymptotic));
  grkq::Table t{"partitions",
                {"n", "k", "count", "log2_count", "exact_bits", "asymptotic_bits",
                 "relative_difference"},
                {}};
  t.rows.push_back({std::int64_t(o.n), std::int64_t(k), exact, log2_value, std::int64_t(bits),
                    asymptotic, bits > 0 ? (asymptotic - double(bits)) / double(bits) : 0.0});
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial quantum search: schedules, simulations and query-count tables"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write to this file instead of stdout");
    sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the generation timestamp");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one partial search and report the state");
  simulate->add_option("--n", o.n, "Database size")->required();
  simulate->add_option("--k", o.k, "Number of blocks")->required();
  simulate->add_option("--schedule", o.schedule, "'optimal' or j1,j2");
  simulate->add_option("--final-op", o.final_op, "g1, it-is1 or is1");
  simulate->add_option("--full-vector-cap", o.full_vector_cap,
                       "Largest N cross-checked on the full vector");
  common(simulate);

  auto* schedule = app.add_subcommand("schedule", "Optimal schedule and strategy comparison");
  schedule->add_option("--n", o.n, "Database size")->required();
  schedule->add_option("--k", o.k, "Number of blocks")->required();
  common(schedule);

  auto* hierarchy = app.add_subcommand("hierarchy", "Run a sequence of partial searches");
  hierarchy->add_option("--n", o.n, "Database size")->required();
  hierarchy->add_option("--k", o.k, "Comma-separated block counts, coarsest first")->required();
  hierarchy->add_option("--negative-j1", o.negative_j1,
                        "When a later stage's j1 is negative: clamp, or clamp and re-solve j2");
  common(hierarchy);

  auto* tables = app.add_subcommand("tables", "Recompute a reference table");
  tables->add_option("which", o.table, "table1, table2 or table3")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3"}));
  common(tables);

  auto* sweep = app.add_subcommand("sweep", "Hierarchy gap over a (K1, K2) grid");
  sweep->add_option("--k1", o.k1_range, "First-level range a..b");
  sweep->add_option("--k2", o.k2_range, "Second-level range a..b");
  common(sweep);

  auto* partitions = app.add_subcommand("partitions", "Count equal-block partitions");
  partitions->add_option("--n", o.n, "Database size")->required();
  partitions->add_option("--k", o.k, "Number of blocks")->required();
  common(partitions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  int code = kOk;
  try {
    grkq::Table table;
    if (*simulate) {
      table = cmd_simulate(o, code);
    } else if (*schedule) {
      table = cmd_schedule(o);
    } else if (*hierarchy) {
      table = cmd_hierarchy(o);
    } else if (*tables) {
      table = cmd_tables(o, code);
    } else if (*sweep) {
      table = cmd_sweep(o, code);
    } else {
      table = cmd_partitions(o);
    }

    const std::string stamp = o.no_timestamp ? "" : grkq::utc_timestamp();
    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw UsageError("cannot open '" + o.out + "' for writing");
    }
    std::ostream& out = o.out.empty() ? std::cout : file;
    if (o.format == "json") {
      grkq::write_json(out, table, stamp);
    } else {
      grkq::write_csv(out, table, stamp);
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed");
    return code;
  } catch (const UsageError& e) {
    std::cerr << "grkq-cli: " << e.what() << "\n";
    return kUsage;
  } catch (const Failure& e) {
    std::cerr << "grkq-cli: " << e.what() << "\n";
    return e.status == GRK_ERR_INTERNAL ? kInternal : kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "grkq-cli: internal error: " << e.what() << "\n";
    return kInternal;
  }
}
