#pragma once

// Small combinatorial toolkit: binomials, colex ranking of k-subsets,
// permutations of [k] with Lehmer ranks, and set partitions as
// restricted growth strings.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace orbitcsp {

inline constexpr int kMaxPoints = 24;
inline constexpr int kMaxArity = 6;

inline std::uint64_t binomial(int n, int r) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxPoints + 1>, kMaxPoints + 1> t{};
    for (int i = 0; i <= kMaxPoints; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (r < 0 || n < 0 || r > n) return 0;
  if (n > kMaxPoints) throw std::out_of_range("binomial: too many points");
  return table[n][r];
}

/// Colex rank of a strictly increasing tuple.
inline std::size_t subset_rank(std::span<const int> sorted) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], static_cast<int>(i) + 1);
  return r;
}

/// All k-subsets of [n] as increasing tuples, indexed by colex rank.
inline const std::vector<std::vector<int>>& subsets_of(int n, int k) {
  if (n < 0 || n > kMaxPoints || k < 0 || k > kMaxArity)
    throw std::out_of_range("subsets_of: size out of range");
  static std::array<std::array<std::vector<std::vector<int>>, kMaxArity + 1>, kMaxPoints + 1> cache;
  static std::array<std::array<std::once_flag, kMaxArity + 1>, kMaxPoints + 1> once;
  std::call_once(once[n][k], [n, k] {
    auto& out = cache[n][k];
    out.assign(binomial(n, k), {});
    if (k > n) return;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
      out[subset_rank(cur)] = cur;
      int i = k - 1;
      while (i >= 0 && cur[i] == n - k + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
  });
  return cache[n][k];
}

/// All k-subsets of [n] in lexicographic order (user-facing listings).
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
  auto out = subsets_of(n, k);
  std::sort(out.begin(), out.end());
  return out;
}

/// Permutations of [k] in lexicographic order; position = Lehmer rank.
inline const std::vector<std::vector<int>>& permutations_of(int k) {
  if (k < 0 || k > kMaxArity) throw std::out_of_range("permutations_of: arity out of range");
  static std::array<std::vector<std::vector<int>>, kMaxArity + 1> cache;
  static std::array<std::once_flag, kMaxArity + 1> once;
  std::call_once(once[k], [k] {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do cache[k].push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  });
  return cache[k];
}

inline std::size_t permutation_rank(std::span<const int> p) {
  std::size_t r = 0;
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller += p[j] < p[i];
    std::size_t fact = 1;
    for (std::size_t f = 2; f < k - i; ++f) fact *= f;
    r += smaller * fact;
  }
  return r;
}

/// For an injective tuple t returns p with t[i] == sorted(t)[p[i]].
template <typename T>
inline void sorting_pattern(std::span<const T> t, std::span<int> p) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    int below = 0;
    for (std::size_t j = 0; j < t.size(); ++j) below += t[j] < t[i];
    p[i] = below;
  }
}

inline std::vector<int> inverse_permutation(std::span<const int> p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

/// r[i] = p[q[i]]: reindexing by p first, then by q.
inline std::vector<int> compose_permutations(std::span<const int> p, std::span<const int> q) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

using Rgs = std::vector<std::uint8_t>;

inline int class_count(const Rgs& rgs) {
  int c = 0;
  for (auto x : rgs) c = std::max(c, x + 1);
  return c;
}

/// Rewrites class ids so they appear in order of first occurrence.
inline Rgs canonical_rgs(std::span<const int> classes) {
  Rgs out(classes.size());
  std::vector<int> seen;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), classes[i]);
    if (it == seen.end()) {
      out[i] = static_cast<std::uint8_t>(seen.size());
      seen.push_back(classes[i]);
    } else {
      out[i] = static_cast<std::uint8_t>(it - seen.begin());
    }
  }
  return out;
}

/// All set partitions of [m] as restricted growth strings, lexicographic.
inline const std::vector<Rgs>& partitions_of(int m) {
  constexpr int kMaxPartitioned = 12;
  if (m < 0 || m > kMaxPartitioned) throw std::out_of_range("partitions_of: too many positions");
  static std::array<std::vector<Rgs>, kMaxPartitioned + 1> cache;
  static std::array<std::once_flag, kMaxPartitioned + 1> once;
  std::call_once(once[m], [m] {
    auto& out = cache[m];
    Rgs cur(m, 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
      if (pos == m) {
        out.push_back(cur);
        return;
      }
      for (int c = 0; c <= used; ++c) {
        cur[pos] = static_cast<std::uint8_t>(c);
        self(self, pos + 1, std::max(used, c + 1));
      }
    };
    rec(rec, 0, 0);
  });
  return cache[m];
}

}  // namespace orbitcsp
