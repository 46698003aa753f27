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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cayley_perc/branching.hpp"
#include "cayley_perc/cayley.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/generators.hpp"
#include "cayley_perc/hash.hpp"
#include "cayley_perc/percolation.hpp"

namespace cperc {

enum class OutputFormat { kCsv, kJson };

struct SweepConfig {
  int n = 9;
  std::string tree_spec = "star";
  std::vector<double> epsilon_grid;  // used when lambda_grid is empty
  std::vector<double> lambda_grid;
  int trials = 20;
  std::uint64_t master_seed = 20090901;
  int k = 1;
  double delta = 0.1;
  double c_k = 1.0;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
  int workers = 0;  // 0: hardware concurrency
  DecompositionOptions decomposition;
};

// `steps` evenly spaced values from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw UsageError("grid needs at least one step");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return out;
}

// n = 9, star tree, 20 ε points in [0.05, 1.0], 20 trials.
inline SweepConfig default_sweep_config() {
  SweepConfig cfg;
  cfg.epsilon_grid = linspace(0.05, 1.0, 20);
  return cfg;
}

struct GridPoint {
  double epsilon = 0.0;
  double lambda = 0.0;
};

inline std::vector<GridPoint> sweep_grid(const SweepConfig& cfg) {
  if (cfg.n < 2) throw UsageError("sweep: n must be >= 2");
  std::vector<GridPoint> pts;
  if (!cfg.lambda_grid.empty()) {
    for (double l : cfg.lambda_grid) pts.push_back({l * (cfg.n - 1) - 1.0, l});
  } else {
    for (double e : cfg.epsilon_grid) pts.push_back({e, (1.0 + e) / (cfg.n - 1)});
  }
  if (pts.empty()) throw UsageError("sweep: empty ε/λ grid");
  for (const GridPoint& p : pts) {
    if (!(p.lambda >= 0.0 && p.lambda <= 1.0)) {
      throw UsageError("sweep: ε=" + std::to_string(p.epsilon) + " gives λ=" + std::to_string(p.lambda) +
                       " outside [0, 1] at n=" + std::to_string(cfg.n));
    }
  }
  if (cfg.trials < 1) throw UsageError("sweep: trials must be >= 1");
  return pts;
}

// Seed of trial `trial` at grid point `point`; independent of grid size.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
  return mix(master, point, trial);
}

struct SweepRow {
  int n = 0;
  std::string tree_id;
  double epsilon = 0.0;
  double lambda = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t selected_count = 0;
  std::uint64_t largest = 0;
  std::uint64_t second_largest = 0;
  std::uint64_t num_components = 0;
  double relative_giant = 0.0;
  double predicted_survival = 0.0;  // ℘(ε)
  double predicted_giant = 0.0;     // ℘(ε) · λ · n!
  std::uint64_t gamma_nk_count = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Theory columns depend only on (n, ε, λ).
inline void fill_prediction(SweepRow& row) {
  row.predicted_survival = row.epsilon > 0.0 ? survival_at_epsilon(row.epsilon).value : 0.0;
  row.predicted_giant = row.predicted_survival * row.lambda * static_cast<double>(factorial(row.n));
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  const std::vector<GridPoint> grid = sweep_grid(cfg);
  const TranspositionTree tree = parse_tree_spec(cfg.tree_spec, cfg.n);
  const CayleyGraph graph(tree, /*metric_cap=*/0);
  const std::string tree_id = tree.id();

  const std::size_t jobs = grid.size() * static_cast<std::size_t>(cfg.trials);
  std::vector<SweepRow> rows(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t pi = j / static_cast<std::size_t>(cfg.trials);
      const int trial = static_cast<int>(j % static_cast<std::size_t>(cfg.trials));
      try {
        const GridPoint& gp = grid[pi];
        PercolationParams params = PercolationParams::from_lambda(cfg.n, gp.lambda, trial_seed(cfg.master_seed, pi, trial))
                                       .with_threshold(cfg.k, cfg.delta, cfg.c_k);
        params.epsilon = gp.epsilon;
        ComponentReport rep;
        try {
          rep = components(graph, params, cfg.decomposition);
        } catch (const CapabilityError& e) {
          throw CapabilityError(std::string(e.what()) + " [n=" + std::to_string(cfg.n) +
                                ", ε=" + std::to_string(gp.epsilon) + "]");
        }
        SweepRow& row = rows[j];
        row.n = cfg.n;
        row.tree_id = tree_id;
        row.epsilon = gp.epsilon;
        row.lambda = gp.lambda;
        row.trial = trial;
        row.seed = params.seed;
        row.selected_count = rep.selected_count;
        row.largest = rep.largest;
        row.second_largest = rep.second_largest;
        row.num_components = rep.num_components;
        row.relative_giant = rep.relative_giant;
        row.gamma_nk_count = rep.gamma_nk_count;
        fill_prediction(row);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(jobs, cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers) : hw);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

// Per-grid-point aggregate over trials.
struct SweepSummary {
  double epsilon = 0.0;
  double lambda = 0.0;
  int trials = 0;
  double mean_relative_giant = 0.0;
  double sd_relative_giant = 0.0;
  double mean_largest = 0.0;
  double rel_sd_largest = 0.0;  // sd(largest) / mean(largest)
  double predicted_survival = 0.0;
};

inline std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
  std::vector<SweepSummary> out;
  std::map<std::pair<double, double>, std::vector<const SweepRow*>> groups;
  std::vector<std::pair<double, double>> order;
  for (const SweepRow& r : rows) {
    auto key = std::pair(r.lambda, r.epsilon);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : order) {
    const auto& g = groups[key];
    SweepSummary s;
    s.lambda = key.first;
    s.epsilon = key.second;
    s.trials = static_cast<int>(g.size());
    s.predicted_survival = g.front()->predicted_survival;
    double sum = 0, sum2 = 0, lsum = 0, lsum2 = 0;
    for (const SweepRow* r : g) {
      sum += r->relative_giant;
      sum2 += r->relative_giant * r->relative_giant;
      const double l = static_cast<double>(r->largest);
      lsum += l;
      lsum2 += l * l;
    }
    const double m = static_cast<double>(g.size());
    s.mean_relative_giant = sum / m;
    s.sd_relative_giant = g.size() > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / m) / (m - 1))) : 0.0;
    s.mean_largest = lsum / m;
    const double lsd = g.size() > 1 ? std::sqrt(std::max(0.0, (lsum2 - lsum * lsum / m) / (m - 1))) : 0.0;
    s.rel_sd_largest = s.mean_largest > 0 ? lsd / s.mean_largest : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace cperc
