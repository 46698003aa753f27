// Copyright 2026 The cayley-perc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

#include "cayley_perc/io.hpp"
#include "cayley_perc/plot.hpp"
#include "cayley_perc/sweep.hpp"
#include "cayley_perc/verify.hpp"

namespace cperc {
namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.n = 6;
  cfg.epsilon_grid = {0.25, 1.0, 2.0};
  cfg.trials = 4;
  cfg.workers = 1;
  return cfg;
}

TEST(SweepTest, GridFromEpsilonAndLambda) {
  const auto pts = sweep_grid(small_config());
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_DOUBLE_EQ(pts[1].lambda, 2.0 / 5);
  SweepConfig cfg = small_config();
  cfg.lambda_grid = {0.0, 1.0};
  const auto lp = sweep_grid(cfg);
  EXPECT_DOUBLE_EQ(lp[0].epsilon, -1.0);
  EXPECT_DOUBLE_EQ(lp[1].epsilon, 4.0);
  cfg.lambda_grid = {1.5};
  EXPECT_THROW(sweep_grid(cfg), UsageError);
  cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(sweep_grid(cfg), UsageError);
  cfg = small_config();
  cfg.epsilon_grid = {10.0};
  EXPECT_THROW(sweep_grid(cfg), UsageError);
}

TEST(SweepTest, DefaultConfig) {
  const SweepConfig cfg = default_sweep_config();
  EXPECT_EQ(cfg.n, 9);
  EXPECT_EQ(cfg.tree_spec, "star");
  EXPECT_EQ(cfg.trials, 20);
  ASSERT_EQ(cfg.epsilon_grid.size(), 20u);
  EXPECT_DOUBLE_EQ(cfg.epsilon_grid.front(), 0.05);
  EXPECT_DOUBLE_EQ(cfg.epsilon_grid.back(), 1.0);
}

TEST(SweepTest, TrialSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (int p = 0; p < 30; ++p) {
    for (int t = 0; t < 30; ++t) seen.insert(trial_seed(7, p, t));
  }
  EXPECT_EQ(seen.size(), 900u);
}

TEST(SweepTest, FullAndEmptyGraphs) {
  SweepConfig cfg = small_config();
  cfg.lambda_grid = {1.0, 0.0};
  cfg.trials = 2;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 4u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(rows[i].selected_count, 720u);
    EXPECT_EQ(rows[i].largest, 720u);
    EXPECT_EQ(rows[i].num_components, 1u);
    EXPECT_DOUBLE_EQ(rows[i].relative_giant, 1.0);
  }
  for (int i = 2; i < 4; ++i) {
    EXPECT_EQ(rows[i].selected_count, 0u);
    EXPECT_EQ(rows[i].largest, 0u);
    EXPECT_EQ(rows[i].num_components, 0u);
    EXPECT_EQ(rows[i].relative_giant, 0.0);
    EXPECT_EQ(rows[i].predicted_survival, 0.0);
  }
}

TEST(SweepTest, RowInvariantsAndPrediction) {
  const auto rows = run_sweep(small_config());
  ASSERT_EQ(rows.size(), 12u);
  for (const SweepRow& r : rows) {
    EXPECT_EQ(r.tree_id, "star");
    EXPECT_LE(r.second_largest, r.largest);
    EXPECT_LE(r.largest, r.selected_count);
    EXPECT_LE(r.selected_count, 720u);
    if (r.selected_count > 0) { EXPECT_DOUBLE_EQ(r.relative_giant, double(r.largest) / double(r.selected_count)); }
    EXPECT_NEAR(r.predicted_giant, r.predicted_survival * r.lambda * 720.0, 1e-9 * r.predicted_giant + 1e-12);
    EXPECT_DOUBLE_EQ(r.predicted_survival, survival_at_epsilon(r.epsilon).value);
  }
}

TEST(SweepTest, DeterministicAcrossWorkerCounts) {
  SweepConfig cfg = small_config();
  const auto one = run_sweep(cfg);
  cfg.workers = 3;
  const auto three = run_sweep(cfg);
  EXPECT_EQ(one, three);
  EXPECT_EQ(to_csv(one), to_csv(three));
}

TEST(SweepTest, CapabilityErrorCarriesContext) {
  SweepConfig cfg = small_config();
  cfg.n = 13;
  cfg.epsilon_grid = {0.5};
  cfg.trials = 1;
  try {
    run_sweep(cfg);
    FAIL() << "expected CapabilityError";
  } catch (const CapabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("n=13"), std::string::npos);
  }
}

TEST(SweepTest, Summary) {
  const auto sum = summarize(run_sweep(small_config()));
  ASSERT_EQ(sum.size(), 3u);
  for (const auto& s : sum) {
    EXPECT_EQ(s.trials, 4);
    EXPECT_GE(s.mean_relative_giant, 0.0);
    EXPECT_LE(s.mean_relative_giant, 1.0);
    EXPECT_GE(s.sd_relative_giant, 0.0);
  }
  EXPECT_DOUBLE_EQ(sum[0].epsilon, 0.25);
}

TEST(IoTest, CsvSchemaAndRoundTrip) {
  const auto rows = run_sweep(small_config());
  const std::string csv = to_csv(rows);
  EXPECT_EQ(csv.rfind("# cayley-perc v1\n", 0), 0u);
  EXPECT_NE(csv.find("\nn,tree_id,epsilon,lambda,trial,seed,selected_count,largest,second_largest,num_components,"
                     "relative_giant,predicted_survival,predicted_giant,gamma_nk_count\n"),
            std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
  EXPECT_EQ(parse_csv(csv), rows);
  EXPECT_THROW(parse_csv("n,tree_id\n1,star\n"), UsageError);
  EXPECT_THROW(parse_csv(csv + "6,star,0.5\n"), UsageError);
  EXPECT_THROW(parse_csv(csv + "6,star,x,0.3,0,1,2,3,4,5,0.5,0.5,1,0\n"), UsageError);
}

TEST(IoTest, NonStarTreeIdSurvivesCsv) {
  SweepConfig cfg = small_config();
  cfg.tree_spec = "prufer:2,5,5,1";
  cfg.trials = 1;
  const auto rows = run_sweep(cfg);
  EXPECT_EQ(rows.front().tree_id.find(','), std::string::npos);
  EXPECT_EQ(parse_csv(to_csv(rows)), rows);
  EXPECT_EQ(parse_tree_spec(rows.front().tree_id, 6), parse_tree_spec(cfg.tree_spec, 6));
}

TEST(IoTest, FormatDoubleRoundTrips) {
  for (double x : {0.0, 0.1, 1.0 / 3, 2.0 / 8, 1e-300, 123456.789, 0.7968121300200199}) {
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
}

TEST(IoTest, JsonSchema) {
  const auto rows = run_sweep(small_config());
  const auto j = nlohmann::json::parse(to_json(rows));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), rows.size());
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.size(), 14u);
  EXPECT_EQ(j[3]["largest"].get<std::uint64_t>(), rows[3].largest);
  EXPECT_EQ(j[3]["tree_id"].get<std::string>(), "star");
  EXPECT_DOUBLE_EQ(j[3]["epsilon"].get<double>(), rows[3].epsilon);
}

TEST(IoTest, AtomicWriteLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "cayley_perc_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "rows.csv";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  EXPECT_EQ(read_file(path), "second\n");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1);
  EXPECT_THROW(read_file(dir / "missing.csv"), std::exception);
  std::filesystem::remove_all(dir);
}

TEST(PlotTest, SvgHasTheoryAndData) {
  const auto rows = run_sweep(small_config());
  const std::string svg = render_plot_svg(rows);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("id=\"theory\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"data\""), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '<') , std::count(svg.begin(), svg.end(), '>'));
  EXPECT_NE(svg.find("</svg>"), std::string::npos);

  auto mixed = rows;
  mixed.back().n = 7;
  EXPECT_THROW(render_plot_svg(mixed), UsageError);
  EXPECT_THROW(render_plot_svg({}), UsageError);
}

TEST(VerifyTest, AllSuitesPass) {
  for (const auto& name : suite_names()) {
    const SuiteReport rep = run_verification_suite(name);
    EXPECT_TRUE(rep.ok()) << name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_GT(rep.passed, 0) << name;
  }
  EXPECT_THROW(run_verification_suite("nope"), UsageError);
}

TEST(VerifyTest, TreeEnumeration) {
  EXPECT_EQ(all_trees(4).size(), 16u);
  EXPECT_EQ(all_trees(5).size(), 125u);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(order_sequence_valid(random_tree(7, rng)));
}

// Shape of the default sweep at n = 9: low near ε = 0, higher at ε = 1,
// second component small once the giant exists.
TEST(DefaultSweepTest, ShapeAtNine) {
  SweepConfig cfg = default_sweep_config();
  cfg.epsilon_grid = {0.05, 1.0};
  cfg.trials = 10;
  const auto sum = summarize(run_sweep(cfg));
  ASSERT_EQ(sum.size(), 2u);
  EXPECT_LT(sum[0].mean_relative_giant, sum[1].mean_relative_giant);
  EXPECT_NEAR(sum[1].mean_relative_giant, survival_at_epsilon(1.0).value, 0.08);
}

}  // namespace
}  // namespace cperc
