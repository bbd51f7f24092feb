#pragma once

// Exhaustive reference semantics used to cross-check the engine.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"
#include "orbitcsp/minimality.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/solver.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

inline constexpr int kDefaultOracleBudget = 7;

/// Searches partitions of the variables, then labelings of the quotient in
/// colex order, checking each constraint as soon as all its k-sets are labeled.
inline std::optional<Certificate> brute_solve(const Instance& in, const GroundStructure& g,
                                              int budget = kDefaultOracleBudget) {
  const int n = in.var_count();
  const int k = g.k();
  const Signature& sig = g.sig();
  if (n > budget) throw BudgetError("brute_solve: " + std::to_string(n) + " variables exceed the budget");
  for (const auto& c : in.constraints)
    if (c.empty()) return std::nullopt;
  for (const auto& rgs : partitions_of(n)) {
    const int m = class_count(rgs);
    const auto& subs = subsets_of(m, k);
    // constraint index lists keyed by the rank after which they are decidable
    std::vector<std::vector<int>> due(subs.size() + 1);
    std::vector<std::vector<int>> cls(in.constraints.size());
    for (std::size_t ci = 0; ci < in.constraints.size(); ++ci) {
      for (int x : in.constraints[ci].vars) cls[ci].push_back(rgs[x]);
      std::vector<int> distinct = cls[ci];
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (static_cast<int>(distinct.size()) < k) {
        due[0].push_back(static_cast<int>(ci));
      } else {
        std::vector<int> top(distinct.end() - k, distinct.end());
        due[subset_rank(top) + 1].push_back(static_cast<int>(ci));
      }
    }
    LabeledStructure x(m, k);
    auto satisfied = [&](int ci) { return in.constraints[ci].contains(make_type(sig, cls[ci], x)); };
    if (!std::all_of(due[0].begin(), due[0].end(), satisfied)) continue;
    bool found = false;
    auto rec = [&](auto&& self, std::size_t r) -> void {
      if (r == subs.size()) {
        found = true;
        return;
      }
      for (Label l = 0; l < sig.label_count() && !found; ++l) {
        x.set_rank(r, l);
        if (!g.bound_free(x, subs[r][k - 1])) continue;
        if (!std::all_of(due[r + 1].begin(), due[r + 1].end(), satisfied)) continue;
        self(self, r + 1);
      }
      if (!found) x.set_rank(r, kUnset);
    };
    rec(rec, 0);
    if (found) return Certificate{x, std::vector<int>(rgs.begin(), rgs.end())};
  }
  return std::nullopt;
}

/// Join by enumerating every type over vars(r1) ∪ vars(r2).
inline TypedRelation brute_join(const GroundStructure& g, const TypedRelation& r1, const TypedRelation& r2,
                                const std::vector<int>& keep) {
  std::vector<int> all = r1.vars;
  for (int v : r2.vars)
    if (!r1.has_var(v)) all.push_back(v);
  auto full = full_relation(g, all);
  auto p1 = detail::positions_of(full, r1.vars);
  auto p2 = detail::positions_of(full, r2.vars);
  auto pk = detail::positions_of(full, keep);
  std::set<Type> out;
  for (const auto& t : full.rows)
    if (r1.contains(restrict_type(g.sig(), t, p1)) && r2.contains(restrict_type(g.sig(), t, p2)))
      out.insert(restrict_type(g.sig(), t, pk));
  return TypedRelation(keep, {out.begin(), out.end()});
}

struct RandomInstanceParams {
  int vars = 5;
  int constraints = 4;
  /// probability that an orbit is dropped from a constraint
  double density = 0.5;
  /// largest constraint arity; clamped to [k, max(k+1, b)]
  int max_arity = 0;
};

/// Reproducible instance whose constraints are unions of injective orbits.
/// Uses raw 64-bit engine output only, so it is identical across platforms.
inline Instance random_instance(const GroundStructure& g, const RandomInstanceParams& prm, std::uint64_t seed) {
  const int k = g.k();
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int top_arity = std::min(prm.max_arity > 0 ? prm.max_arity : k + 1, std::max(k + 1, g.b()));
  Instance in;
  for (int i = 0; i < prm.vars; ++i) in.names.push_back("x" + std::to_string(i));
  if (prm.vars < k) return in;
  for (int c = 0; c < prm.constraints; ++c) {
    const int arity = std::min(prm.vars, k + static_cast<int>(below(std::max(1, top_arity - k + 1))));
    std::vector<int> pool(prm.vars);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> scope;
    for (int i = 0; i < arity; ++i) {
      std::size_t j = i + below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      scope.push_back(pool[i]);
    }
    auto full = full_relation(g, scope, true);
    std::vector<Type> rows;
    for (const auto& t : full.rows)
      if (unit() >= prm.density) rows.push_back(t);
    if (rows.empty()) rows.push_back(full.rows[below(full.rows.size())]);
    in.constraints.emplace_back(scope, std::move(rows));
  }
  return in;
}

}  // namespace orbitcsp
