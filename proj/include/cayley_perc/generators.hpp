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
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayley_perc/error.hpp"
#include "cayley_perc/permutation.hpp"

namespace cperc {

// One generator (v s) of the ordering sequence: v is the vertex added at
// that step, s its unique neighbor among the vertices already present.
struct OrderedMove {
  int v = 0;
  int s = 0;

  friend bool operator==(const OrderedMove&, const OrderedMove&) = default;
};

struct Edge {
  int a = 0;  // a < b
  int b = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Diameter data for the chain of subtrees T_2 ⊂ ... ⊂ T_n grown along the
// ordering sequence.
struct DiameterBounds {
  int subtree_sum = 0;                // Σ_{i=2..n} diam(T_i)
  std::uint64_t universal = 0;        // C(n, 2)
  std::optional<int> closed_form;     // star: 2(n-2), path: C(n, 2)
  std::string closed_form_name;       // "star", "bubble" or empty
};

// A minimal generating set of transpositions of S_n, stored as the labeled
// tree on [n] whose edges are the transpositions. Immutable once built.
class TranspositionTree {
 public:
  static TranspositionTree star(int n) {
    check_n(n);
    std::vector<Edge> e;
    for (int j = 2; j <= n; ++j) e.push_back({1, j});
    return TranspositionTree(n, std::move(e));
  }

  static TranspositionTree bubble(int n) {
    check_n(n);
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    return TranspositionTree(n, std::move(e));
  }

  static TranspositionTree from_edges(int n, const std::vector<std::pair<int, int>>& pairs) {
    check_n(n);
    std::vector<Edge> e;
    for (auto [a, b] : pairs) {
      if (a < 1 || a > n || b < 1 || b > n) {
        throw InputDomainError("edge " + std::to_string(a) + "-" + std::to_string(b) + " outside [1, " +
                               std::to_string(n) + "]");
      }
      if (a == b) throw MinimalityError("edge " + std::to_string(a) + "-" + std::to_string(b) + " is a loop");
      e.push_back({std::min(a, b), std::max(a, b)});
    }
    if (static_cast<int>(e.size()) != n - 1) {
      throw MinimalityError("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                            " edges, got " + std::to_string(e.size()));
    }
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      }
      return x;
    };
    for (const Edge& ed : e) {
      const int ra = find(ed.a), rb = find(ed.b);
      if (ra == rb) {
        throw MinimalityError("edge " + std::to_string(ed.a) + "-" + std::to_string(ed.b) +
                              " closes a cycle (redundant transposition)");
      }
      parent[static_cast<std::size_t>(ra)] = rb;
    }
    // n-1 edges without a cycle on n vertices is connected.
    return TranspositionTree(n, std::move(e));
  }

  // Standard Prüfer decoding; the sequence has length n-2 over [n].
  static TranspositionTree from_prufer(int n, const std::vector<int>& seq) {
    if (n < 2) throw InputDomainError("prufer: n must be >= 2");
    if (static_cast<int>(seq.size()) != n - 2) {
      throw InputDomainError("prufer: sequence length " + std::to_string(seq.size()) + " != n-2 = " +
                             std::to_string(n - 2));
    }
    std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
    for (int x : seq) {
      if (x < 1 || x > n) {
        throw InputDomainError("prufer: entry " + std::to_string(x) + " outside [1, " + std::to_string(n) + "]");
      }
      ++degree[static_cast<std::size_t>(x)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v <= n; ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
    }
    std::vector<std::pair<int, int>> pairs;
    for (int x : seq) {
      const int leaf = leaves.top();
      leaves.pop();
      pairs.emplace_back(leaf, x);
      if (--degree[static_cast<std::size_t>(x)] == 1) leaves.push(x);
    }
    const int u = leaves.top();
    leaves.pop();
    pairs.emplace_back(u, leaves.top());
    return from_edges(n, pairs);
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<OrderedMove>& order_sequence() const { return order_; }

  // diam(T_i) for i = 2..n, aligned with order_sequence().
  const std::vector<int>& subtree_diameters() const { return subtree_diam_; }

  bool is_star() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.a == 1; });
  }

  bool is_bubble() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.b == e.a + 1; });
  }

  DiameterBounds diameter_bounds() const {
    DiameterBounds d;
    d.subtree_sum = std::accumulate(subtree_diam_.begin(), subtree_diam_.end(), 0);
    d.universal = static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(n_ - 1) / 2;
    if (n_ >= 3 && is_bubble()) {
      d.closed_form = static_cast<int>(d.universal);
      d.closed_form_name = "bubble";
    } else if (n_ >= 3 && is_star()) {
      d.closed_form = 2 * (n_ - 2);
      d.closed_form_name = "star";
    }
    return d;
  }

  int diameter_bound() const { return diameter_bounds().subtree_sum; }

  std::vector<int> prufer() const {
    std::vector<int> seq;
    if (n_ < 3) return seq;
    std::vector<std::vector<int>> adj = adjacency();
    std::vector<int> degree(static_cast<std::size_t>(n_) + 1);
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v <= n_; ++v) {
      degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
      if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
    }
    std::vector<bool> removed(static_cast<std::size_t>(n_) + 1, false);
    for (int step = 0; step < n_ - 2; ++step) {
      const int leaf = leaves.top();
      leaves.pop();
      removed[static_cast<std::size_t>(leaf)] = true;
      for (int w : adj[static_cast<std::size_t>(leaf)]) {
        if (removed[static_cast<std::size_t>(w)]) continue;
        seq.push_back(w);
        if (--degree[static_cast<std::size_t>(w)] == 1) leaves.push(w);
      }
    }
    return seq;
  }

  // Stable identifier without commas, suitable for a CSV cell.
  std::string id() const {
    if (n_ >= 3 && is_star()) return "star";
    if (is_bubble()) return "bubble";
    const auto code = prufer();
    std::string s = "prufer";
    for (std::size_t i = 0; i < code.size(); ++i) s += (i ? "." : ":") + std::to_string(code[i]);
    return s;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_) + 1);
    for (const Edge& e : edges_) {
      adj[static_cast<std::size_t>(e.a)].push_back(e.b);
      adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  friend bool operator==(const TranspositionTree& x, const TranspositionTree& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

 private:
  TranspositionTree(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    build_order();
    build_subtree_diameters();
  }

  static void check_n(int n) {
    if (n < 1 || n > kMaxDegree) {
      throw InputDomainError("tree: n=" + std::to_string(n) + " outside [1, 255]");
    }
  }

  // Vertices other than 1 sorted by (tree distance to 1, label); each one's
  // partner is its parent towards 1, which is already present.
  void build_order() {
    const auto adj = adjacency();
    std::vector<int> dist(static_cast<std::size_t>(n_) + 1, -1), parent(static_cast<std::size_t>(n_) + 1, 0);
    std::queue<int> q;
    dist[1] = 0;
    q.push(1);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(w)] = u;
          q.push(w);
        }
      }
    }
    std::vector<int> verts;
    for (int v = 2; v <= n_; ++v) verts.push_back(v);
    std::sort(verts.begin(), verts.end(), [&](int x, int y) {
      return std::pair(dist[static_cast<std::size_t>(x)], x) < std::pair(dist[static_cast<std::size_t>(y)], y);
    });
    order_.clear();
    for (int v : verts) order_.push_back({v, parent[static_cast<std::size_t>(v)]});
  }

  void build_subtree_diameters() {
    const auto adj = adjacency();
    std::vector<bool> in(static_cast<std::size_t>(n_) + 1, false);
    in[1] = true;
    auto farthest = [&](int src) {
      std::vector<int> dist(static_cast<std::size_t>(n_) + 1, -1);
      std::queue<int> q;
      dist[static_cast<std::size_t>(src)] = 0;
      q.push(src);
      std::pair<int, int> best{0, src};
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        best = std::max(best, std::pair(dist[static_cast<std::size_t>(u)], u));
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (in[static_cast<std::size_t>(w)] && dist[static_cast<std::size_t>(w)] < 0) {
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
            q.push(w);
          }
        }
      }
      return best;
    };
    subtree_diam_.clear();
    for (const OrderedMove& m : order_) {
      in[static_cast<std::size_t>(m.v)] = true;
      subtree_diam_.push_back(farthest(farthest(1).second).first);
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<OrderedMove> order_;
  std::vector<int> subtree_diam_;
};

namespace detail {

inline std::vector<int> parse_int_list(std::string_view s, char sep, std::string_view what) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = std::min(s.find(sep, pos), s.size());
    const std::string tok(s.substr(pos, next - pos));
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) {
      throw UsageError("tree spec: bad integer '" + tok + "' in " + std::string(what));
    }
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

}  // namespace detail

// Parses `star` | `bubble` | `prufer:<int>,<int>,...` | `edges:<a>-<b>,...`.
// For prufer and edges specs n is implied by the list; a mismatch with the
// requested n is a usage error.
inline TranspositionTree parse_tree_spec(std::string_view spec, int n) {
  if (spec == "star") return TranspositionTree::star(n);
  if (spec == "bubble") return TranspositionTree::bubble(n);
  if (spec.starts_with("prufer:")) {
    // ',' or '.' separated; id() emits the '.' form so it stays one CSV field
    const std::string_view body = spec.substr(7);
    const char sep = body.find('.') != std::string_view::npos ? '.' : ',';
    const auto seq = detail::parse_int_list(body, sep, spec);
    if (static_cast<int>(seq.size()) != n - 2) {
      throw UsageError("tree spec '" + std::string(spec) + "' has " + std::to_string(seq.size()) +
                       " entries; n=" + std::to_string(n) + " needs " + std::to_string(n - 2));
    }
    return TranspositionTree::from_prufer(n, seq);
  }
  if (spec.starts_with("edges:")) {
    std::vector<std::pair<int, int>> pairs;
    std::string_view rest = spec.substr(6);
    std::size_t pos = 0;
    while (!rest.empty() && pos <= rest.size()) {
      const std::size_t next = std::min(rest.find(',', pos), rest.size());
      const auto ab = detail::parse_int_list(rest.substr(pos, next - pos), '-', spec);
      if (ab.size() != 2) throw UsageError("tree spec: malformed edge in '" + std::string(spec) + "'");
      pairs.emplace_back(ab[0], ab[1]);
      pos = next + 1;
    }
    return TranspositionTree::from_edges(n, pairs);
  }
  throw UsageError("unknown tree spec '" + std::string(spec) + "' (expected star | bubble | prufer:... | edges:...)");
}

}  // namespace cperc
