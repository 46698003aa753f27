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
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cayley_perc/error.hpp"

namespace cperc {

// Largest n for which n! fits in a 64-bit rank (20! < 2^64 < 21!).
inline constexpr int kMaxRankedDegree = 20;
// Largest n a Permutation can hold; entries are stored as bytes.
inline constexpr int kMaxDegree = 255;

inline constexpr std::array<std::uint64_t, kMaxRankedDegree + 1> kFactorials = [] {
  std::array<std::uint64_t, kMaxRankedDegree + 1> f{};
  f[0] = 1;
  for (int i = 1; i <= kMaxRankedDegree; ++i) f[i] = f[i - 1] * static_cast<std::uint64_t>(i);
  return f;
}();

inline std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxRankedDegree) {
    throw InputDomainError("factorial: n=" + std::to_string(n) + " outside [0, 20]");
  }
  return kFactorials[static_cast<std::size_t>(n)];
}

// An element of S_n written as the tuple (x_1, ..., x_n) of its images.
//
// Positions and values are 1-based at the public surface. Multiplication
// follows "apply the right operand first": compose(p, q)(k) = p(q(k)). With
// that convention right multiplication by the transposition (i j) swaps the
// entries at positions i and j, which is what apply_transposition does.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    check_degree(n);
    Permutation p;
    p.entries_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.entries_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    return p;
  }

  // Validates that `values` is a bijection on {1..n}.
  static Permutation from_values(std::span<const int> values) {
    const int n = static_cast<int>(values.size());
    check_degree(n);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    Permutation p;
    p.entries_.reserve(values.size());
    for (int v : values) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
        throw InputDomainError("permutation: entries are not a bijection on {1.." + std::to_string(n) + "}");
      }
      seen[static_cast<std::size_t>(v)] = true;
      p.entries_.push_back(static_cast<std::uint8_t>(v));
    }
    return p;
  }

  static Permutation from_values(std::initializer_list<int> values) {
    return from_values(std::span<const int>(values.begin(), values.size()));
  }

  int size() const { return static_cast<int>(entries_.size()); }

  // x_pos, 1-based.
  int at(int pos) const {
    check_position(pos);
    return entries_[static_cast<std::size_t>(pos - 1)];
  }

  std::span<const std::uint8_t> entries() const { return entries_; }

  std::vector<int> values() const { return {entries_.begin(), entries_.end()}; }

  bool is_identity() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] != i + 1) return false;
    }
    return true;
  }

  // (x_1..x_i..x_j..x_n)(i j) = (x_1..x_j..x_i..x_n). The two positions may
  // be given in either order but must differ.
  Permutation apply_transposition(int i, int j) const {
    check_position(i);
    check_position(j);
    if (i == j) throw InputDomainError("apply_transposition: positions must differ");
    Permutation out = *this;
    std::swap(out.entries_[static_cast<std::size_t>(i - 1)], out.entries_[static_cast<std::size_t>(j - 1)]);
    return out;
  }

  Permutation inverse() const {
    Permutation out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      out.entries_[entries_[i] - 1u] = static_cast<std::uint8_t>(i + 1);
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

  // Lexicographic order on the tuples.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  static void check_degree(int n) {
    if (n < 1 || n > kMaxDegree) {
      throw InputDomainError("permutation: degree n=" + std::to_string(n) + " outside [1, 255]");
    }
  }

  void check_position(int pos) const {
    if (pos < 1 || pos > size()) {
      throw InputDomainError("permutation: position " + std::to_string(pos) + " outside [1, " +
                             std::to_string(size()) + "]");
    }
  }

  std::vector<std::uint8_t> entries_;
};

// p∘q: apply q first, then p.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw InputDomainError("compose: degrees differ (" + std::to_string(p.size()) + " vs " +
                           std::to_string(q.size()) + ")");
  }
  std::vector<int> out(static_cast<std::size_t>(p.size()));
  for (int k = 1; k <= p.size(); ++k) out[static_cast<std::size_t>(k - 1)] = p.at(q.at(k));
  return Permutation::from_values(out);
}

// Position of a permutation in the lexicographic listing of S_n.
struct Rank {
  std::uint64_t value = 0;
  int n = 0;

  friend auto operator<=>(const Rank&, const Rank&) = default;
};

namespace detail {

// Lehmer rank of a raw 1-based tuple, n <= 20. Digit c_i counts the later
// entries smaller than x_i; weights are (n-i)!.
inline std::uint64_t lehmer_rank(std::span<const std::uint8_t> x) {
  const std::size_t n = x.size();
  std::uint32_t unseen = ((1u << n) - 1u) << 1;
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t below = (1u << x[i]) - 1u;
    const auto c = static_cast<std::uint64_t>(std::popcount(unseen & below));
    r += c * kFactorials[n - 1 - i];
    unseen &= ~(1u << x[i]);
  }
  return r;
}

inline void lehmer_unrank(std::uint64_t r, std::span<std::uint8_t> out) {
  const std::size_t n = out.size();
  std::uint32_t unused = ((1u << n) - 1u) << 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t w = kFactorials[n - 1 - i];
    auto c = static_cast<int>(r / w);
    r %= w;
    std::uint32_t m = unused;
    while (c-- > 0) m &= m - 1;  // drop the c smallest unused values
    const int v = std::countr_zero(m);
    out[i] = static_cast<std::uint8_t>(v);
    unused &= ~(1u << v);
  }
}

}  // namespace detail

inline Rank rank(const Permutation& p) {
  if (p.size() > kMaxRankedDegree) {
    throw InputDomainError("rank: n=" + std::to_string(p.size()) + " exceeds 20");
  }
  return Rank{detail::lehmer_rank(p.entries()), p.size()};
}

inline Permutation unrank(Rank r) {
  if (r.n < 1 || r.n > kMaxRankedDegree) {
    throw InputDomainError("unrank: n=" + std::to_string(r.n) + " outside [1, 20]");
  }
  if (r.value >= kFactorials[static_cast<std::size_t>(r.n)]) {
    throw InputDomainError("unrank: rank " + std::to_string(r.value) + " >= " + std::to_string(r.n) + "!");
  }
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(r.n));
  detail::lehmer_unrank(r.value, buf);
  std::vector<int> vals(buf.begin(), buf.end());
  return Permutation::from_values(vals);
}

inline Permutation unrank(std::uint64_t value, int n) { return unrank(Rank{value, n}); }

}  // namespace cperc
