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
#include <numbers>
#include <random>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "cayley_perc/cayley.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/percolation.hpp"
#include "cayley_perc/permutation.hpp"

namespace cperc {

// ---------------------------------------------------------------------------
// Offspring laws

class OffspringLaw {
 public:
  enum class Kind { kBinomial, kPoisson };

  static OffspringLaw binomial(std::uint64_t trials, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputDomainError("binomial: p=" + std::to_string(p) + " outside [0, 1]");
    return OffspringLaw(Kind::kBinomial, trials, p);
  }

  static OffspringLaw poisson(double rate) {
    if (!(rate >= 0.0)) throw InputDomainError("poisson: rate=" + std::to_string(rate) + " < 0");
    return OffspringLaw(Kind::kPoisson, 0, rate);
  }

  Kind kind() const { return kind_; }
  std::uint64_t trials() const { return trials_; }
  double param() const { return param_; }

  double mean() const { return kind_ == Kind::kBinomial ? static_cast<double>(trials_) * param_ : param_; }

  double pmf(std::uint64_t k) const {
    if (kind_ == Kind::kBinomial) {
      if (k > trials_) return 0.0;
      if (param_ == 0.0) return k == 0 ? 1.0 : 0.0;
      if (param_ == 1.0) return k == trials_ ? 1.0 : 0.0;
      const double m = static_cast<double>(trials_), kk = static_cast<double>(k);
      return std::exp(std::lgamma(m + 1) - std::lgamma(kk + 1) - std::lgamma(m - kk + 1) + kk * std::log(param_) +
                      (m - kk) * std::log1p(-param_));
    }
    if (param_ == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kk = static_cast<double>(k);
    return std::exp(kk * std::log(param_) - param_ - std::lgamma(kk + 1));
  }

  // Largest k carrying probability mass. Poisson support is cut where the
  // remaining tail mass drops below 1e-15.
  std::uint64_t support_max() const {
    if (kind_ == Kind::kBinomial) return trials_;
    if (param_ == 0.0) return 0;
    double cum = 0.0;
    std::uint64_t k = 0;
    for (;; ++k) {
      cum += pmf(k);
      if (k >= param_ && 1.0 - cum < 1e-15) return k;
    }
  }

  // Probability generating function E[s^ξ].
  double pgf(double s) const {
    if (kind_ == Kind::kBinomial) return std::pow(1.0 - param_ + param_ * s, static_cast<double>(trials_));
    return std::exp(param_ * (s - 1.0));
  }

  // Sum of `count` independent draws, sampled in one shot: Bin(count·m, p)
  // or Poisson(count·λ).
  template <typename Rng>
  std::uint64_t sample_sum(std::uint64_t count, Rng& rng) const {
    if (count == 0) return 0;
    if (kind_ == Kind::kBinomial) {
      const std::uint64_t t = count * trials_;
      if (param_ == 0.0 || t == 0) return 0;
      if (param_ == 1.0) return t;
      std::binomial_distribution<std::uint64_t> d(t, param_);
      return d(rng);
    }
    if (param_ == 0.0) return 0;
    std::poisson_distribution<std::uint64_t> d(param_ * static_cast<double>(count));
    return d(rng);
  }

 private:
  OffspringLaw(Kind k, std::uint64_t trials, double p) : kind_(k), trials_(trials), param_(p) {}

  Kind kind_;
  std::uint64_t trials_;
  double param_;
};

// ---------------------------------------------------------------------------
// Survival probabilities

enum class Regime { kSubcritical, kCritical, kSupercritical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::kSubcritical: return "subcritical";
    case Regime::kCritical: return "critical";
    case Regime::kSupercritical: return "supercritical";
  }
  return "?";
}

struct SurvivalResult {
  double value = 0.0;
  double residual = 0.0;  // |e^{-λy} - (1 - y)| at the returned y
  int iterations = 0;
  Regime regime = Regime::kSubcritical;
};

// Survival probability π_P(λ) of a Poisson(λ) Galton–Watson process: the
// root y ∈ (0, 1) of 1 - y = e^{-λy} when λ > 1, else 0. Bracketed
// bisection followed by a Newton polish that is discarded if it leaves
// [0, 1] or does not improve the residual.
inline SurvivalResult survival_poisson(double lambda) {
  if (!(lambda >= 0.0)) throw InputDomainError("survival_poisson: λ=" + std::to_string(lambda) + " < 0");
  SurvivalResult res;
  if (lambda < 1.0) return res;
  if (lambda == 1.0) {
    res.regime = Regime::kCritical;
    return res;
  }
  res.regime = Regime::kSupercritical;
  // f > 0 on (0, y*), f < 0 on (y*, 1].
  auto f = [lambda](double y) { return -std::expm1(-lambda * y) - y; };
  auto residual = [lambda](double y) { return std::abs(std::exp(-lambda * y) - (1.0 - y)); };
  double lo = std::numeric_limits<double>::epsilon(), hi = 1.0;
  int it = 0;
  constexpr int kMaxIterations = 200;
  while (it < kMaxIterations && hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
    ++it;
  }
  double y = 0.5 * (lo + hi);
  for (int k = 0; k < 20 && it < kMaxIterations; ++k, ++it) {
    const double fy = f(y);
    const double dfy = lambda * std::exp(-lambda * y) - 1.0;
    if (dfy == 0.0) break;
    const double next = y - fy / dfy;
    if (!(next > 0.0 && next < 1.0) || residual(next) > residual(y)) break;
    if (next == y) break;
    y = next;
  }
  res.value = y;
  res.residual = residual(y);
  res.iterations = it;
  return res;
}

// ℘(ε): survival of the Poisson(1 + ε) process, exact for every ε.
inline SurvivalResult survival_at_epsilon(double epsilon) { return survival_poisson(1.0 + epsilon); }

// Near-critical asymptotic form ℘(ε) ≈ 2ε for ε → 0.
inline double near_critical_survival(double epsilon) { return 2.0 * epsilon; }

// Survival of a process whose root draws from `root` and every later
// individual from `rest`: with q the smallest fixed point of G_rest,
// 1 - G_root(q).
inline double survival_probability(const OffspringLaw& root, const OffspringLaw& rest) {
  double q = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double next = rest.pgf(q);
    if (std::abs(next - q) < 1e-15) {
      q = next;
      break;
    }
    q = next;
  }
  return 1.0 - root.pgf(q);
}

// ---------------------------------------------------------------------------
// Simulation

enum class ProcessOutcome { kExtinct, kSurvivedCap };

struct ProcessTrace {
  std::vector<std::uint64_t> generation_sizes;  // Z_0 = 1, Z_1, ...
  ProcessOutcome outcome = ProcessOutcome::kExtinct;
};

// Z_0 = 1, Z_1 ~ root law, Z_t = Σ_{i<=Z_{t-1}} ξ_i^{(t)} with ξ from the
// rest law. Stops at extinction, at max_generations, or once the population
// reaches max_population (the latter two report kSurvivedCap).
inline ProcessTrace simulate_process(const OffspringLaw& law_root, const OffspringLaw& law_rest, int max_generations,
                                     std::uint64_t max_population, std::uint64_t seed) {
  if (max_generations < 1 || max_population < 1) {
    throw InputDomainError("simulate_process: caps must be positive");
  }
  std::mt19937_64 rng(seed);
  ProcessTrace tr;
  tr.generation_sizes.push_back(1);
  std::uint64_t z = law_root.sample_sum(1, rng);
  for (int t = 1;; ++t) {
    tr.generation_sizes.push_back(z);
    if (z == 0) {
      tr.outcome = ProcessOutcome::kExtinct;
      return tr;
    }
    if (z >= max_population || t >= max_generations) {
      tr.outcome = ProcessOutcome::kSurvivedCap;
      return tr;
    }
    z = law_rest.sample_sum(z, rng);
  }
}

// Exact P(|C| = i) for the same two-law process, by the hitting-time
// (Dwass) identity: given k root children, the k subtrees total i-1 with
// probability (k/(i-1)) · P(Bin((i-1)(n-2), λ) = i-1-k).
inline double exact_progeny_pmf(int n, double lambda_n, std::uint64_t i) {
  if (n <= 3) throw InputDomainError("exact_progeny_pmf: n=" + std::to_string(n) + " must exceed 3");
  if (i < 1) throw InputDomainError("exact_progeny_pmf: i must be >= 1");
  const auto root = OffspringLaw::binomial(static_cast<std::uint64_t>(n - 1), lambda_n);
  if (i == 1) return root.pmf(0);
  const std::uint64_t m = i - 1;
  const auto walk = OffspringLaw::binomial(m * static_cast<std::uint64_t>(n - 2), lambda_n);
  double total = 0.0;
  for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(m, static_cast<std::uint64_t>(n - 1)); ++k) {
    total += root.pmf(k) * (static_cast<double>(k) / static_cast<double>(m)) * walk.pmf(m - k);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Component-size tail, large deviations, partition parameters

struct TailValue {
  double value = 0.0;
  double log_value = 0.0;
};

// Asymptotic P(|C| = i) for the process with root B(n-1, λ) and all other
// individuals B(n-2, λ):
//   (λ(n-2))^{i-1} / (i sqrt(2πi)) · [(n-2)(1-λ)/(n-3)]^{ni-3i+2},
// evaluated in log space.
inline TailValue progeny_tail(int n, double lambda_n, std::uint64_t i) {
  if (n <= 3) throw InputDomainError("progeny_tail: n=" + std::to_string(n) + " must exceed 3");
  if (i < 2) throw InputDomainError("progeny_tail: i must be >= 2");
  if (!(lambda_n > 0.0 && lambda_n < 1.0)) {
    throw InputDomainError("progeny_tail: λ_n=" + std::to_string(lambda_n) + " outside (0, 1)");
  }
  const double nn = n, ii = static_cast<double>(i);
  const double lg = (ii - 1.0) * std::log(lambda_n * (nn - 2.0)) - std::log(ii) -
                    0.5 * std::log(2.0 * std::numbers::pi * ii) +
                    (nn * ii - 3.0 * ii + 2.0) * (std::log(nn - 2.0) + std::log1p(-lambda_n) - std::log(nn - 3.0));
  return {std::exp(lg), lg};
}

// Two-sided Chernoff bound P(|Z - E Z| > η E Z) <= 2 exp(-c_η E Z) with
// c_η = min{(1+η) ln(1+η) - η, η²/2}.
inline double chernoff_bound(double expectation, double eta) {
  if (!(expectation > 0.0) || !(eta > 0.0)) {
    throw InputDomainError("chernoff_bound: expectation and η must be positive");
  }
  const double c = std::min((1.0 + eta) * std::log1p(eta) - eta, 0.5 * eta * eta);
  return 2.0 * std::exp(-c * expectation);
}

namespace detail {

// floor((num/den) · n^{2/3}) computed exactly: the largest m >= 0 with
// (den·m)^3 <= num^3 · n^2.
inline std::uint64_t floor_two_thirds(std::uint64_t n, std::uint64_t num, std::uint64_t den) {
  using u128 = unsigned __int128;
  const u128 rhs = static_cast<u128>(num) * num * num * n * n;
  auto fits = [&](std::uint64_t m) {
    const u128 x = static_cast<u128>(den) * m;
    return x * x * x <= rhs;
  };
  auto m = static_cast<std::uint64_t>(static_cast<double>(num) / static_cast<double>(den) *
                                      std::cbrt(static_cast<double>(n) * static_cast<double>(n)));
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

// True iff (num/den) · n^{2/3} is an integer.
inline bool two_thirds_is_integer(std::uint64_t n, std::uint64_t num, std::uint64_t den) {
  using u128 = unsigned __int128;
  const std::uint64_t m = floor_two_thirds(n, num, den);
  const u128 x = static_cast<u128>(den) * m;
  return x * x * x == static_cast<u128>(num) * num * num * n * n;
}

}  // namespace detail

struct PartitionParams {
  int n = 0;
  int k = 0;
  std::int64_t mu_n = 0;   // ⌊n^{2/3} / (2k(k+1))⌋
  std::int64_t ell_n = 0;  // ⌊k n^{2/3} / (2(k+1))⌋
  std::int64_t z_n = 0;    // n - k μ_n - ℓ_n
};

inline PartitionParams partition_params(int n, int k) {
  if (n < 1 || k < 1) throw InputDomainError("partition_params: n and k must be >= 1");
  PartitionParams p;
  p.n = n;
  p.k = k;
  const auto kk = static_cast<std::uint64_t>(k);
  p.mu_n = static_cast<std::int64_t>(detail::floor_two_thirds(static_cast<std::uint64_t>(n), 1, 2 * kk * (kk + 1)));
  p.ell_n = static_cast<std::int64_t>(detail::floor_two_thirds(static_cast<std::uint64_t>(n), kk, 2 * (kk + 1)));
  p.z_n = n - static_cast<std::int64_t>(k) * p.mu_n - p.ell_n;
  return p;
}

// ---------------------------------------------------------------------------
// Tree-growth process embedded in Γ(S_n, T_n)

struct EmbeddedProcessLimits {
  int target_cap = 0;   // ⌊n^{2/3}/4⌋
  int move_count = 0;   // |N| = ⌊n - n^{2/3}/2⌋ - 1
  int probe_width = 0;  // n - ⌊3n^{2/3}/4⌋ - 1
};

inline EmbeddedProcessLimits embedded_process_limits(int n) {
  const auto un = static_cast<std::uint64_t>(n);
  EmbeddedProcessLimits lim;
  lim.target_cap = static_cast<int>(detail::floor_two_thirds(un, 1, 4));
  // ⌊n - x/2⌋ = n - ⌈x/2⌉
  const auto half_floor = static_cast<int>(detail::floor_two_thirds(un, 1, 2));
  const int half_ceil = half_floor + (detail::two_thirds_is_integer(un, 1, 2) ? 0 : 1);
  lim.move_count = std::clamp(n - half_ceil - 1, 0, n - 1);
  lim.probe_width = std::max(0, n - static_cast<int>(detail::floor_two_thirds(un, 3, 4)) - 1);
  return lim;
}

enum class GrowthOutcome { kReachedTarget, kDied };

struct EmbeddedTreeResult {
  std::vector<Permutation> members;                 // M, start first
  std::vector<std::pair<int, int>> tree_edges;      // (parent index, child index) into members
  std::vector<int> generator_used;                  // index into the move set per tree edge
  GrowthOutcome outcome = GrowthOutcome::kDied;
};

// Grows a tree of selected vertices from `start`. The move set N is the
// first |N| generators of the ordering sequence; each generator is accepted
// at most once over the whole process. The live vertex processed next is the
// smallest by (generation, lexicographic tuple). For that vertex the unused
// generators of N are probed in order until `probe_width` of them have been
// rejected; every accepted probe adds a child and frees one more slot in the
// window. Probe outcomes are the percolation draws is_selected(params, ·) of
// the probed vertices; the start vertex is present unconditionally.
inline EmbeddedTreeResult embedded_tree_process(const CayleyGraph& g, const PercolationParams& params,
                                                const Permutation& start, int target_size) {
  const int n = g.n();
  if (start.size() != n) throw InputDomainError("embedded_tree_process: start has the wrong degree");
  if (params.n != n) throw InputDomainError("embedded_tree_process: params are for a different n");
  const EmbeddedProcessLimits lim = embedded_process_limits(n);
  if (target_size < 1 || target_size > std::max(1, lim.target_cap)) {
    throw InputDomainError("embedded_tree_process: target " + std::to_string(target_size) + " outside [1, " +
                           std::to_string(std::max(1, lim.target_cap)) + "]");
  }
  const auto moves = g.moves();
  std::vector<bool> used(static_cast<std::size_t>(lim.move_count), false);

  EmbeddedTreeResult res;
  res.members.push_back(start);
  if (target_size == 1) {
    res.outcome = GrowthOutcome::kReachedTarget;
    return res;
  }
  // (generation, tuple, member index)
  std::set<std::tuple<int, Permutation, int>> live;
  live.emplace(0, start, 0);
  while (!live.empty()) {
    const auto [gen, vertex, idx] = *live.begin();
    live.erase(live.begin());
    int rejected = 0;
    for (int m = 0; m < lim.move_count && rejected < lim.probe_width; ++m) {
      if (used[static_cast<std::size_t>(m)]) continue;
      const auto [a, b] = moves[static_cast<std::size_t>(m)];
      Permutation child = vertex.apply_transposition(a + 1, b + 1);
      if (!is_selected(params, child)) {
        ++rejected;
        continue;
      }
      used[static_cast<std::size_t>(m)] = true;
      const int child_idx = static_cast<int>(res.members.size());
      res.tree_edges.emplace_back(idx, child_idx);
      res.generator_used.push_back(m);
      res.members.push_back(child);
      if (static_cast<int>(res.members.size()) == target_size) {
        res.outcome = GrowthOutcome::kReachedTarget;
        return res;
      }
      live.emplace(gen + 1, std::move(child), child_idx);
    }
  }
  res.outcome = GrowthOutcome::kDied;
  return res;
}

}  // namespace cperc
