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
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cayley_perc/branching.hpp"
#include "cayley_perc/cayley.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/generators.hpp"
#include "cayley_perc/hash.hpp"

namespace cperc {

struct SuiteBudget {
  int n = 5;
  int samples = 100;
  std::uint64_t seed = 1;
  int runs = 20000;  // Monte-Carlo runs per point in the branching suite
};

struct SuiteReport {
  std::string name;
  int passed = 0;
  int failed = 0;
  // Smallest slack over all checks; negative means a check failed.
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<std::string> failures;

  bool ok() const { return failed == 0; }

  void check(bool pass, double margin, const std::string& what) {
    worst_margin = std::min(worst_margin, margin);
    if (pass) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 20) failures.push_back(what);
    }
  }
};

// All nⁿ⁻² labeled trees on [n] via their Prüfer codes.
inline std::vector<TranspositionTree> all_trees(int n) {
  if (n < 2) return {TranspositionTree::star(std::max(n, 1))};
  std::vector<TranspositionTree> out;
  std::vector<int> code(static_cast<std::size_t>(n - 2), 1);
  for (;;) {
    out.push_back(TranspositionTree::from_prufer(n, code));
    int i = n - 3;
    while (i >= 0 && code[static_cast<std::size_t>(i)] == n) code[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++code[static_cast<std::size_t>(i)];
  }
  return out;
}

inline TranspositionTree random_tree(int n, std::mt19937_64& rng) {
  if (n < 3) return TranspositionTree::bubble(n);
  std::uniform_int_distribution<int> d(1, n);
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& c : code) c = d(rng);
  return TranspositionTree::from_prufer(n, code);
}

// Growth-sequence validity: each s_i already present, each v_i new, pairs
// equal the edge set.
inline bool order_sequence_valid(const TranspositionTree& t) {
  std::vector<bool> present(static_cast<std::size_t>(t.n()) + 1, false);
  present[1] = true;
  std::vector<Edge> pairs;
  for (const OrderedMove& m : t.order_sequence()) {
    if (!present[static_cast<std::size_t>(m.s)] || present[static_cast<std::size_t>(m.v)]) return false;
    present[static_cast<std::size_t>(m.v)] = true;
    pairs.push_back({std::min(m.v, m.s), std::max(m.v, m.s)});
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs == t.edges();
}

namespace suites {

inline SuiteReport diameter(const SuiteBudget& b) {
  SuiteReport rep;
  rep.name = "diameter";
  const int n = b.n;
  for (const TranspositionTree& t : all_trees(n)) {
    const CayleyGraph g(t, std::max(n, CayleyGraph::kDefaultMetricCap));
    const DiameterBounds d = t.diameter_bounds();
    const int exact = g.exact_diameter();
    const std::string id = t.id();
    rep.check(order_sequence_valid(t), 0.0, id + ": invalid ordering sequence");
    rep.check(exact <= d.subtree_sum, d.subtree_sum - exact, id + ": exact diameter exceeds Σ diam(T_i)");
    rep.check(static_cast<std::uint64_t>(d.subtree_sum) <= d.universal,
              static_cast<double>(d.universal) - d.subtree_sum, id + ": Σ diam(T_i) exceeds C(n,2)");
    if (n >= 3 && t.is_bubble()) {
      rep.check(static_cast<std::uint64_t>(exact) == d.universal, 0.0, id + ": bubble diameter != C(n,2)");
    }
    if (n >= 4 && t.is_star()) {
      rep.check(exact <= 2 * (n - 2), 2 * (n - 2) - exact, id + ": star diameter exceeds 2(n-2)");
    }
  }
  return rep;
}

inline SuiteReport boundary(const SuiteBudget& b) {
  SuiteReport rep;
  rep.name = "boundary";
  const int n = b.n;
  std::mt19937_64 rng(b.seed);
  std::vector<TranspositionTree> trees{TranspositionTree::star(n), TranspositionTree::bubble(n)};
  while (trees.size() < 5) trees.push_back(random_tree(n, rng));
  std::vector<CayleyGraph> graphs;
  for (const auto& t : trees) graphs.emplace_back(t, std::max(n, CayleyGraph::kDefaultMetricCap));
  const std::uint64_t total = graphs.front().vertex_count();
  std::vector<std::uint64_t> all(total);
  std::iota(all.begin(), all.end(), 0);
  for (int s = 0; s < b.samples; ++s) {
    const CayleyGraph& g = graphs[static_cast<std::size_t>(s) % graphs.size()];
    std::uniform_int_distribution<std::uint64_t> size_dist(1, total);
    const std::uint64_t size = size_dist(rng);
    std::shuffle(all.begin(), all.end(), rng);
    RankSet set(total);
    for (std::uint64_t i = 0; i < size; ++i) set.insert(all[i]);
    const double bound = g.aldous_boundary_bound(set);
    const auto exact = static_cast<double>(g.boundary(set).size());
    rep.check(bound <= exact, exact - bound,
              g.tree().id() + ": |d(S)|=" + std::to_string(exact) + " < bound " + std::to_string(bound));
  }
  return rep;
}

inline SuiteReport order(const SuiteBudget& b) {
  SuiteReport rep;
  rep.name = "order";
  const int n = b.n;
  std::mt19937_64 rng(b.seed);
  std::vector<TranspositionTree> trees{TranspositionTree::star(n), TranspositionTree::bubble(n), random_tree(n, rng)};
  for (const auto& t : trees) {
    const CayleyGraph g(t, std::max(n, CayleyGraph::kDefaultMetricCap));
    std::vector<Permutation> vs;
    for (std::uint64_t r = 0; r < g.vertex_count(); ++r) vs.push_back(unrank(r, n));
    std::sort(vs.begin(), vs.end(), [&](const auto& x, const auto& y) { return g.cmp_order(x, y) < 0; });
    rep.check(vs.front().is_identity(), 0.0, t.id() + ": identity is not the minimum");
    for (std::size_t i = 1; i < vs.size(); ++i) {
      const int d0 = g.distance_to_identity(rank(vs[i - 1]).value);
      const int d1 = g.distance_to_identity(rank(vs[i]).value);
      const bool ok = d0 < d1 || (d0 == d1 && vs[i - 1] < vs[i]);
      rep.check(ok, d1 - d0, t.id() + ": order broken at " + vs[i].to_string());
    }
    for (int s = 0; s < b.samples; ++s) {
      const auto& x = vs[rng() % vs.size()];
      const auto& y = vs[rng() % vs.size()];
      const auto xy = g.cmp_order(x, y), yx = g.cmp_order(y, x);
      rep.check((xy < 0) == (yx > 0) && (xy == 0) == (x == y), 0.0, t.id() + ": cmp_order not antisymmetric");
    }
  }
  return rep;
}

inline SuiteReport survival(const SuiteBudget&) {
  SuiteReport rep;
  rep.name = "survival";
  for (double lam : {1.01, 1.1, 1.25, 1.5, 1.75, 2.0, 3.0, 5.0}) {
    const SurvivalResult r = survival_poisson(lam);
    rep.check(r.residual <= 1e-12, 1e-12 - r.residual, "λ=" + std::to_string(lam) + ": residual too large");
    // unique sign change of f(y) = 1 - y - e^{-λy} on (0, 1)
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double y = i / 1000.0;
      const double f = 1.0 - y - std::exp(-lam * y);
      if (i > 1 && (f > 0) != (prev > 0)) ++changes;
      prev = f;
    }
    rep.check(changes == 1, 0.0, "λ=" + std::to_string(lam) + ": root not unique on grid");
    rep.check(r.value > 0 && r.value < 1, std::min(r.value, 1 - r.value), "λ=" + std::to_string(lam) + ": out of (0,1)");
  }
  for (double lam : {0.0, 0.5, 1.0}) {
    rep.check(survival_poisson(lam).value == 0.0, 0.0, "λ=" + std::to_string(lam) + ": expected 0");
  }
  return rep;
}

// Monte-Carlo survival of the B(n-1)/B(n-2) process at n=1000 against
// π_P(λ), and the asymptotic component-size law against the exact one.
inline SuiteReport branching(const SuiteBudget& b) {
  SuiteReport rep;
  rep.name = "branching";
  constexpr int n = 1000;
  for (double lam : {1.5, 2.0}) {
    const double p = lam / (n - 1);
    const auto root = OffspringLaw::binomial(n - 1, p), rest = OffspringLaw::binomial(n - 2, p);
    int survived = 0;
    for (int run = 0; run < b.runs; ++run) {
      const auto tr = simulate_process(root, rest, 100000, 10000, mix(b.seed, static_cast<std::uint64_t>(lam * 1000), run));
      survived += tr.outcome == ProcessOutcome::kSurvivedCap;
    }
    const double freq = static_cast<double>(survived) / b.runs;
    const double pi = survival_poisson(lam).value;
    const double sigma = std::sqrt(pi * (1 - pi) / b.runs);
    const double dev = std::abs(freq - pi);
    rep.check(dev <= 3 * sigma, 3 * sigma - dev, "λ=" + std::to_string(lam) + ": frequency " + std::to_string(freq) +
                                                     " vs π_P " + std::to_string(pi));
  }
  const double lam_n = 1.5 / 999;
  for (std::uint64_t i : {20u, 50u, 100u}) {
    const double approx = progeny_tail(n, lam_n, i).value;
    const double exact = exact_progeny_pmf(n, lam_n, i);
    const double ratio = approx / exact;
    rep.check(ratio >= 0.5 && ratio <= 2.0, 1.0 - std::abs(std::log2(ratio)),
              "i=" + std::to_string(i) + ": tail ratio " + std::to_string(ratio));
  }
  return rep;
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"boundary", "diameter", "order", "survival", "branching"};
  return names;
}

inline SuiteReport run_verification_suite(const std::string& name, const SuiteBudget& budget = {}) {
  if (name == "boundary") return suites::boundary(budget);
  if (name == "diameter") return suites::diameter(budget);
  if (name == "order") return suites::order(budget);
  if (name == "survival") return suites::survival(budget);
  if (name == "branching") return suites::branching(budget);
  throw UsageError("unknown suite '" + name + "' (expected boundary | diameter | order | survival | branching)");
}

}  // namespace cperc
