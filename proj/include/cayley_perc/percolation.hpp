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
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cayley_perc/cayley.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/hash.hpp"
#include "cayley_perc/permutation.hpp"

namespace cperc {

// Vertex percolation parameters: λ_n = (1 + ε_n) / (n - 1), a 64-bit seed
// and the Γ_{n,k} size threshold ⌈c_k · n^{kδ + 2/3}⌉.
struct PercolationParams {
  int n = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  int k = 1;
  double delta = 0.1;
  double c_k = 1.0;

  static PercolationParams from_epsilon(int n, double epsilon, std::uint64_t seed) {
    check_n(n);
    PercolationParams p;
    p.n = n;
    p.epsilon = epsilon;
    p.lambda = (1.0 + epsilon) / (n - 1);
    p.seed = seed;
    p.validate();
    return p;
  }

  static PercolationParams from_lambda(int n, double lambda, std::uint64_t seed) {
    check_n(n);
    PercolationParams p;
    p.n = n;
    p.lambda = lambda;
    p.epsilon = lambda * (n - 1) - 1.0;
    p.seed = seed;
    p.validate();
    return p;
  }

  PercolationParams with_threshold(int k_, double delta_, double c_k_) const {
    PercolationParams p = *this;
    p.k = k_;
    p.delta = delta_;
    p.c_k = c_k_;
    p.validate();
    return p;
  }

  void validate() const {
    check_n(n);
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw InputDomainError("selection probability λ=" + std::to_string(lambda) + " outside [0, 1] (n=" +
                             std::to_string(n) + ", ε=" + std::to_string(epsilon) + ")");
    }
    if (k < 1) throw InputDomainError("threshold exponent k must be >= 1");
    if (!(delta > 0.0)) throw InputDomainError("δ must be > 0");
    if (!(c_k > 0.0)) throw InputDomainError("c_k must be > 0");
  }

  // floor(λ · 2^64); meaningful only when λ < 1.
  std::uint64_t selection_threshold() const {
    const long double t = std::floor(static_cast<long double>(lambda) * 18446744073709551616.0L);
    if (t >= 18446744073709551616.0L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(t);
  }

  // Minimum component size counted towards Γ_{n,k}.
  std::uint64_t size_threshold() const {
    const double x = c_k * std::pow(static_cast<double>(n), k * delta + 2.0 / 3.0);
    return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12)));
  }

 private:
  static void check_n(int n) {
    if (n < 2) throw InputDomainError("percolation: n=" + std::to_string(n) + " must be >= 2");
  }
};

// Membership of the vertex with key `key` (its rank for n <= 20) in the
// random induced subgraph. Pure in (seed, key); raising λ at a fixed seed
// never removes a vertex.
inline bool is_selected(const PercolationParams& p, std::uint64_t key) {
  if (p.lambda >= 1.0) return true;
  return mix(p.seed, key) < p.selection_threshold();
}

// Rank when it fits in 64 bits, tuple hash otherwise.
inline std::uint64_t selection_key(const Permutation& v) {
  return v.size() <= kMaxRankedDegree ? rank(v).value : hash_tuple(v.entries());
}

inline bool is_selected(const PercolationParams& p, const Permutation& v) { return is_selected(p, selection_key(v)); }

struct DecompositionOptions {
  int hard_cap = 11;
  bool allow_large = false;  // permits n = 12 (~479M vertices)
  std::uint64_t memory_budget_bytes = std::uint64_t{6} << 30;
};

struct ComponentReport {
  std::uint64_t selected_count = 0;
  std::vector<std::uint64_t> component_sizes;  // descending
  std::uint64_t largest = 0;
  std::uint64_t second_largest = 0;
  std::uint64_t num_components = 0;
  double relative_giant = 0.0;  // largest / selected_count, 0 when nothing is selected
  std::uint64_t gamma_nk_count = 0;
  std::uint64_t threshold_used = 0;

  // ω_n: selected vertices outside Γ_{n,k}.
  std::uint64_t small_component_vertices() const { return selected_count - gamma_nk_count; }

  friend bool operator==(const ComponentReport&, const ComponentReport&) = default;
};

// One realized percolation: the selected vertex set and its components.
class PercolationSample {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  const PercolationParams& params() const { return params_; }
  std::uint64_t vertex_count() const { return selected_.universe(); }
  const RankSet& selected() const { return selected_; }
  std::uint64_t selected_count() const { return root_.size(); }

  // Index of a selected vertex among the selected ranks, kNone otherwise.
  std::uint32_t dense_index(std::uint64_t r) const {
    const std::uint64_t w = selected_.words()[r >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (r & 63);
    if (!(w & bit)) return kNone;
    return prefix_[r >> 6] + static_cast<std::uint32_t>(std::popcount(w & (bit - 1)));
  }

  // Canonical representative (a dense index) of r's component, kNone when r
  // is not selected. Two ranks are connected iff their labels agree.
  std::uint32_t component_of(std::uint64_t r) const {
    const std::uint32_t d = dense_index(r);
    return d == kNone ? kNone : root_[d];
  }

  std::uint64_t component_size(std::uint64_t r) const {
    const std::uint32_t c = component_of(r);
    return c == kNone ? 0 : size_[c];
  }

  // Vertices lying in components of size >= params().size_threshold().
  RankSet gamma_nk() const {
    RankSet out(vertex_count());
    const std::uint64_t thr = params_.size_threshold();
    selected_.for_each([&](std::uint64_t r) {
      if (size_[root_[dense_index(r)]] >= thr) out.insert(r);
    });
    return out;
  }

  ComponentReport report() const {
    ComponentReport rep;
    rep.selected_count = selected_count();
    rep.threshold_used = params_.size_threshold();
    for (std::uint32_t i = 0; i < root_.size(); ++i) {
      if (root_[i] == i) rep.component_sizes.push_back(size_[i]);
    }
    std::sort(rep.component_sizes.begin(), rep.component_sizes.end(), std::greater<>());
    rep.num_components = rep.component_sizes.size();
    if (!rep.component_sizes.empty()) rep.largest = rep.component_sizes[0];
    if (rep.component_sizes.size() > 1) rep.second_largest = rep.component_sizes[1];
    for (std::uint64_t s : rep.component_sizes) {
      if (s >= rep.threshold_used) rep.gamma_nk_count += s;
    }
    rep.relative_giant =
        rep.selected_count ? static_cast<double>(rep.largest) / static_cast<double>(rep.selected_count) : 0.0;
    return rep;
  }

 private:
  friend PercolationSample decompose(const CayleyGraph&, const PercolationParams&, const DecompositionOptions&);

  PercolationParams params_;
  RankSet selected_;
  std::vector<std::uint32_t> prefix_;  // selected ranks before each 64-bit word
  std::vector<std::uint32_t> root_;    // fully compressed union-find parents
  std::vector<std::uint32_t> size_;    // component size, valid at roots
};

// Rough peak memory of decompose(), in bytes.
inline std::uint64_t decomposition_memory_estimate(int n, double lambda) {
  const auto count = static_cast<double>(factorial(n));
  const double bitset = count / 8.0;
  const double prefix = count / 64.0 * 4.0;
  // parent + size per selected vertex, with 5% slack on the expected count
  const double uf = std::min(count, 1.05 * lambda * count + 1024.0) * 8.0;
  return static_cast<std::uint64_t>(bitset + prefix + uf);
}

// Exact component decomposition of the subgraph of Γ(S_n, T_n) induced by
// the selected vertices. Sweeps ranks in lexicographic order, uniting each
// selected vertex with its selected higher-ranked neighbors (union by size,
// path compression).
inline PercolationSample decompose(const CayleyGraph& g, const PercolationParams& params,
                                   const DecompositionOptions& opt = {}) {
  params.validate();
  const int n = g.n();
  if (params.n != n) {
    throw InputDomainError("percolation params for n=" + std::to_string(params.n) + " used on Γ(S_" +
                           std::to_string(n) + ")");
  }
  const int cap = opt.allow_large ? std::max(opt.hard_cap, 12) : opt.hard_cap;
  if (n > cap || n > 12) {
    throw CapabilityError("components: n=" + std::to_string(n) + " exceeds the percolation cap " +
                          std::to_string(cap) + (n == 12 ? " (n=12 needs the large-run acknowledgment)" : ""));
  }
  const std::uint64_t need = decomposition_memory_estimate(n, params.lambda);
  if (need > opt.memory_budget_bytes) {
    throw CapabilityError("components: n=" + std::to_string(n) + ", λ=" + std::to_string(params.lambda) +
                          " needs ~" + std::to_string(need >> 20) + " MiB, budget is " +
                          std::to_string(opt.memory_budget_bytes >> 20) + " MiB");
  }

  PercolationSample s;
  s.params_ = params;
  const std::uint64_t count = g.vertex_count();
  s.selected_ = RankSet(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    if (is_selected(params, r)) s.selected_.insert(r);
  }
  const auto words = s.selected_.words();
  s.prefix_.resize(words.size());
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    s.prefix_[i] = acc;
    acc += static_cast<std::uint32_t>(std::popcount(words[i]));
  }
  s.root_.resize(acc);
  std::iota(s.root_.begin(), s.root_.end(), 0u);
  s.size_.assign(acc, 1u);

  auto& parent = s.root_;
  auto& size = s.size_;
  auto find = [&parent](std::uint32_t x) {
    std::uint32_t r = x;
    while (parent[r] != r) r = parent[r];
    while (parent[x] != r) {
      const std::uint32_t next = parent[x];
      parent[x] = r;
      x = next;
    }
    return r;
  };

  const auto moves = g.moves();
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), std::uint8_t{1});
  for (std::uint64_t r = 0; r < count; ++r, std::next_permutation(perm.begin(), perm.end())) {
    const std::uint32_t dr = s.dense_index(r);
    if (dr == PercolationSample::kNone) continue;
    for (auto [a, b] : moves) {
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      const std::uint64_t w = detail::lehmer_rank(perm);
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      if (w < r) continue;
      const std::uint32_t dw = s.dense_index(w);
      if (dw == PercolationSample::kNone) continue;
      std::uint32_t x = find(dr), y = find(dw);
      if (x == y) continue;
      if (size[x] < size[y]) std::swap(x, y);
      parent[y] = x;
      size[x] += size[y];
    }
  }
  for (std::uint32_t i = 0; i < acc; ++i) parent[i] = find(i);
  return s;
}

inline ComponentReport components(const CayleyGraph& g, const PercolationParams& params,
                                  const DecompositionOptions& opt = {}) {
  return decompose(g, params, opt).report();
}

// Fraction of all vertices v of S_n whose radius-2 ball meets Γ_{n,k}.
inline double two_density(const CayleyGraph& g, const PercolationSample& sample) {
  if (g.n() > g.metric_cap()) {
    throw CapabilityError("two_density: n=" + std::to_string(g.n()) + " exceeds the exact-metric cap " +
                          std::to_string(g.metric_cap()));
  }
  const RankSet covered = g.ball(sample.gamma_nk(), 2);
  return static_cast<double>(covered.size()) / static_cast<double>(g.vertex_count());
}

inline double two_density(const CayleyGraph& g, const PercolationParams& params,
                          const DecompositionOptions& opt = {}) {
  return two_density(g, decompose(g, params, opt));
}

}  // namespace cperc
