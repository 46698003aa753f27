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
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cayley_perc/error.hpp"
#include "cayley_perc/generators.hpp"
#include "cayley_perc/permutation.hpp"

namespace cperc {

// Set of vertices of Γ(S_n, T_n) keyed by Lehmer rank, stored as a bitset.
class RankSet {
 public:
  RankSet() = default;
  explicit RankSet(std::uint64_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::uint64_t universe() const { return universe_; }

  void insert(std::uint64_t r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void erase(std::uint64_t r) { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }
  bool contains(std::uint64_t r) const { return (words_[r >> 6] >> (r & 63)) & 1u; }

  std::uint64_t size() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) f(i * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
    }
  }

  bool intersects(const RankSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const RankSet&, const RankSet&) = default;

 private:
  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// The Cayley graph Γ(S_n, T_n): vertices S_n, v ~ v' iff v^{-1}v' ∈ T_n.
//
// Adjacency is computed on demand, never stored. Exact metric operations
// (distances, balls, boundaries, the distance-then-lex order, diameter)
// enumerate all n! vertices and are allowed only for n <= metric_cap;
// above the cap they throw CapabilityError. The distance profile from the
// identity is computed once at construction when n is within the cap, and
// distance(v, w) = d(id, v^{-1}w) by vertex transitivity.
class CayleyGraph {
 public:
  static constexpr int kDefaultMetricCap = 8;

  explicit CayleyGraph(TranspositionTree tree, int metric_cap = kDefaultMetricCap)
      : tree_(std::move(tree)), metric_cap_(metric_cap) {
    for (const OrderedMove& m : tree_.order_sequence()) moves_.emplace_back(m.v - 1, m.s - 1);
    if (n() <= metric_cap_ && n() <= kMaxRankedDegree) dist_from_id_ = bfs_distances(Permutation::identity(n()));
  }

  int n() const { return tree_.n(); }
  int metric_cap() const { return metric_cap_; }
  const TranspositionTree& tree() const { return tree_; }

  // 0-based position pairs (v_i - 1, s_i - 1) in ordering-sequence order.
  std::span<const std::pair<int, int>> moves() const { return moves_; }

  std::uint64_t vertex_count() const {
    if (n() > kMaxRankedDegree) {
      throw CapabilityError("vertex_count: n=" + std::to_string(n()) + "! does not fit in 64 bits");
    }
    return kFactorials[static_cast<std::size_t>(n())];
  }

  // v·t for each t ∈ T_n, in ordering-sequence order.
  std::vector<Permutation> neighbors(const Permutation& v) const {
    check_member(v);
    std::vector<Permutation> out;
    out.reserve(moves_.size());
    for (auto [a, b] : moves_) out.push_back(v.apply_transposition(a + 1, b + 1));
    return out;
  }

  // Ranks of the neighbors of the vertex with rank r.
  std::vector<std::uint64_t> neighbor_ranks(std::uint64_t r) const {
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(n()));
    detail::lehmer_unrank(r, buf);
    std::vector<std::uint64_t> out;
    out.reserve(moves_.size());
    for (auto [a, b] : moves_) {
      std::swap(buf[static_cast<std::size_t>(a)], buf[static_cast<std::size_t>(b)]);
      out.push_back(detail::lehmer_rank(buf));
      std::swap(buf[static_cast<std::size_t>(a)], buf[static_cast<std::size_t>(b)]);
    }
    return out;
  }

  // BFS distance of every vertex (indexed by rank) from `root`.
  std::vector<std::uint8_t> bfs_distances(const Permutation& root) const {
    require_metric("bfs_distances");
    check_member(root);
    const std::uint64_t count = vertex_count();
    constexpr std::uint8_t kUnseen = 0xff;
    std::vector<std::uint8_t> dist(count, kUnseen);
    std::vector<std::uint64_t> frontier{rank(root).value}, next;
    dist[frontier.front()] = 0;
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(n()));
    for (std::uint8_t level = 1; !frontier.empty(); ++level) {
      next.clear();
      for (std::uint64_t r : frontier) {
        detail::lehmer_unrank(r, buf);
        for (auto [a, b] : moves_) {
          std::swap(buf[static_cast<std::size_t>(a)], buf[static_cast<std::size_t>(b)]);
          const std::uint64_t w = detail::lehmer_rank(buf);
          std::swap(buf[static_cast<std::size_t>(a)], buf[static_cast<std::size_t>(b)]);
          if (dist[w] == kUnseen) {
            dist[w] = level;
            next.push_back(w);
          }
        }
      }
      frontier.swap(next);
    }
    return dist;
  }

  int distance(const Permutation& v, const Permutation& w) const {
    require_metric("distance");
    check_member(v);
    check_member(w);
    return dist_from_id_[rank(compose(v.inverse(), w)).value];
  }

  int distance_to_identity(std::uint64_t r) const {
    require_metric("distance_to_identity");
    return dist_from_id_[r];
  }

  // B(A, j) = {v : d(v, α) <= j for some α ∈ A}; A itself is included.
  RankSet ball(const RankSet& a, int radius) const {
    require_metric("ball");
    RankSet out = a;
    std::vector<std::uint64_t> frontier;
    a.for_each([&](std::uint64_t r) { frontier.push_back(r); });
    std::vector<std::uint64_t> next;
    for (int level = 0; level < radius && !frontier.empty(); ++level) {
      next.clear();
      for (std::uint64_t r : frontier) {
        for (std::uint64_t w : neighbor_ranks(r)) {
          if (!out.contains(w)) {
            out.insert(w);
            next.push_back(w);
          }
        }
      }
      frontier.swap(next);
    }
    return out;
  }

  // d(A) = {v ∉ A : d(v, α) = 1 for some α ∈ A}.
  RankSet boundary(const RankSet& a) const {
    require_metric("boundary");
    RankSet out(vertex_count());
    a.for_each([&](std::uint64_t r) {
      for (std::uint64_t w : neighbor_ranks(r)) {
        if (!a.contains(w)) out.insert(w);
      }
    });
    return out;
  }

  RankSet make_set(std::span<const Permutation> vs) const {
    require_metric("make_set");
    RankSet s(vertex_count());
    for (const Permutation& v : vs) {
      check_member(v);
      s.insert(rank(v).value);
    }
    return s;
  }

  // σ <= τ iff d(σ, id) < d(τ, id), or equal distances and σ <=_lex τ.
  std::strong_ordering cmp_order(const Permutation& sigma, const Permutation& tau) const {
    require_metric("cmp_order");
    check_member(sigma);
    check_member(tau);
    const std::uint64_t rs = rank(sigma).value, rt = rank(tau).value;
    // Lehmer rank order is lexicographic order.
    return std::pair(dist_from_id_[rs], rs) <=> std::pair(dist_from_id_[rt], rt);
  }

  int exact_diameter() const {
    require_metric("exact_diameter");
    return *std::max_element(dist_from_id_.begin(), dist_from_id_.end());
  }

  // Diameter used by boundary estimates: exact when within the metric cap,
  // otherwise the ordering-sequence bound Σ diam(T_i).
  int best_diameter() const {
    if (n() <= metric_cap_ && n() <= kMaxRankedDegree) return exact_diameter();
    return tree_.diameter_bound();
  }

  // Lower bound |d(S)| >= |S| (1 - |S|/n!) / diam for Cayley graphs.
  double aldous_boundary_bound(const RankSet& s) const {
    return aldous_boundary_bound(s.size());
  }

  double aldous_boundary_bound(std::uint64_t set_size) const {
    const double diam = best_diameter();
    if (diam == 0) return 0.0;
    const double total = static_cast<double>(vertex_count());
    const double sz = static_cast<double>(set_size);
    return sz * (1.0 - sz / total) / diam;
  }

 private:
  void require_metric(const char* op) const {
    if (n() > metric_cap_ || n() > kMaxRankedDegree) {
      throw CapabilityError(std::string(op) + ": n=" + std::to_string(n()) + " exceeds the exact-metric cap " +
                            std::to_string(metric_cap_) + "; use diameter_bound() / bounds instead");
    }
  }

  void check_member(const Permutation& v) const {
    if (v.size() != n()) {
      throw InputDomainError("permutation of degree " + std::to_string(v.size()) + " is not a vertex of Γ(S_" +
                             std::to_string(n()) + ")");
    }
  }

  TranspositionTree tree_;
  int metric_cap_;
  std::vector<std::pair<int, int>> moves_;
  std::vector<std::uint8_t> dist_from_id_;
};

}  // namespace cperc
