#pragma once

// Instances and (k,l)-minimality propagation.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

/// Variables are 0..names.size()-1; each constraint is a TypedRelation whose
/// vars are its scope.
struct Instance {
  std::vector<std::string> names;
  std::vector<TypedRelation> constraints;

  [[nodiscard]] int var_count() const { return static_cast<int>(names.size()); }
  [[nodiscard]] bool trivial() const {
    return std::any_of(constraints.begin(), constraints.end(), [](const TypedRelation& c) { return c.empty(); });
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct MinimalityParams {
  int k = 2;
  int ell = 3;
};

/// Rows given over a scope that may repeat variables, rebound to the sorted
/// distinct variables. Rows that separate two occurrences of a variable drop.
inline TypedRelation bind_scope(const Signature& sig, const std::vector<int>& scope, const std::vector<Type>& rows) {
  std::vector<int> vars(scope.begin(), scope.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> first(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    first[i] = static_cast<int>(std::find(scope.begin(), scope.end(), vars[i]) - scope.begin());
  std::vector<Type> out;
  for (const auto& row : rows) {
    if (row.arity() != static_cast<int>(scope.size())) throw InputError("row arity does not match scope");
    bool ok = true;
    for (std::size_t i = 0; i < scope.size() && ok; ++i)
      for (std::size_t j = i + 1; j < scope.size() && ok; ++j)
        if (scope[i] == scope[j] && row.cls[i] != row.cls[j]) ok = false;
    if (ok) out.push_back(restrict_type(sig, row, first));
  }
  return TypedRelation(std::move(vars), std::move(out));
}

/// Sorted scopes, equal scopes merged by intersection, constraints ordered by scope.
inline Instance canonical_form(const Signature& sig, const Instance& in) {
  std::map<std::vector<int>, TypedRelation> by_scope;
  for (const auto& c : in.constraints) {
    for (int x : c.vars)
      if (x < 0 || x >= in.var_count()) throw InputError("constraint variable out of range");
    TypedRelation r = bind_scope(sig, c.vars, c.rows);
    auto it = by_scope.find(r.vars);
    if (it == by_scope.end())
      by_scope.emplace(r.vars, std::move(r));
    else
      it->second = intersect(sig, it->second, r);
  }
  Instance out{in.names, {}};
  for (auto& [scope, r] : by_scope) out.constraints.push_back(std::move(r));
  return out;
}

struct SaturateOptions {
  /// When set, work items are drawn in a pseudo-random order from this seed.
  std::optional<std::uint64_t> shuffle_seed;
  /// Receives one line per constraint that becomes empty or shrinks.
  std::vector<std::string>* log = nullptr;
};

namespace detail {

inline bool covers(const std::vector<int>& scope, const std::vector<int>& t) {
  return std::includes(scope.begin(), scope.end(), t.begin(), t.end());
}

inline std::string scope_text(const Instance& in, const std::vector<int>& scope) {
  std::string s = "(";
  for (std::size_t i = 0; i < scope.size(); ++i) s += (i ? "," : "") + in.names.at(scope[i]);
  return s + ")";
}

inline Instance trivialized(Instance in) {
  for (auto& c : in.constraints) c.rows.clear();
  return in;
}

}  // namespace detail

/// Equivalent (k,l)-minimal instance, or the trivial instance (every constraint
/// empty) once some constraint empties.
inline Instance saturate(const Instance& input, const MinimalityParams& p, const GroundStructure& g,
                         const SaturateOptions& opt = {}) {
  const Signature& sig = g.sig();
  if (p.k < 1 || p.ell < p.k) throw PreconditionError("saturate: need 1 <= k <= ell");
  Instance in = canonical_form(sig, input);
  const int n = in.var_count();
  const int ell = std::min(p.ell, n);
  for (const auto& c : in.constraints)
    if (c.arity() > p.ell) throw PreconditionError("constraint arity exceeds ell = " + std::to_string(p.ell));
  auto note = [&](const std::string& s) {
    if (opt.log) opt.log->push_back(s);
  };
  if (in.trivial()) {
    note("input already contains an empty constraint");
    return detail::trivialized(std::move(in));
  }

  // every ell-subset gets its own constraint, cut down by the ones inside it
  std::set<std::vector<int>> scopes;
  for (const auto& c : in.constraints) scopes.insert(c.vars);
  for (const auto& s : subsets_lex(n, ell)) {
    if (scopes.count(s)) continue;
    TypedRelation r = full_relation(g, s);
    for (const auto& c : in.constraints) {
      if (!detail::covers(s, c.vars)) continue;
      auto pos = detail::positions_of(r, c.vars);
      std::erase_if(r.rows, [&](const Type& t) { return !c.contains(restrict_type(sig, t, pos)); });
    }
    in.constraints.push_back(std::move(r));
    if (in.constraints.back().empty()) {
      note("seeded constraint on " + detail::scope_text(in, s) + " is empty");
      return detail::trivialized(canonical_form(sig, in));
    }
  }
  in = canonical_form(sig, in);

  // work items: every subset of size 1..k of the variables
  std::vector<std::vector<int>> items;
  for (int s = 1; s <= std::min(p.k, n); ++s)
    for (auto& t : subsets_lex(n, s)) items.push_back(std::move(t));
  std::vector<std::vector<int>> covering(items.size());
  std::map<std::vector<int>, int> item_index;
  for (std::size_t i = 0; i < items.size(); ++i) {
    item_index[items[i]] = static_cast<int>(i);
    for (int c = 0; c < static_cast<int>(in.constraints.size()); ++c)
      if (detail::covers(in.constraints[c].vars, items[i])) covering[i].push_back(c);
  }
  std::vector<std::vector<int>> items_of(in.constraints.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    for (int c : covering[i]) items_of[c].push_back(static_cast<int>(i));

  std::deque<int> queue(items.size());
  std::iota(queue.begin(), queue.end(), 0);
  std::vector<bool> queued(items.size(), true);
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));
  if (opt.shuffle_seed) std::shuffle(queue.begin(), queue.end(), rng);

  while (!queue.empty()) {
    int it;
    if (opt.shuffle_seed) {
      std::size_t pick = rng() % queue.size();
      it = queue[pick];
      queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(pick));
    } else {
      it = queue.front();
      queue.pop_front();
    }
    queued[it] = false;
    const auto& cov = covering[it];
    if (cov.size() < 2) continue;
    const auto& t = items[it];
    std::vector<Type> common = project(sig, in.constraints[cov[0]], t).rows;
    for (std::size_t j = 1; j < cov.size() && !common.empty(); ++j) {
      auto other = project(sig, in.constraints[cov[j]], t).rows;
      std::vector<Type> next;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
      common = std::move(next);
    }
    for (int c : cov) {
      auto& rel = in.constraints[c];
      auto pos = detail::positions_of(rel, t);
      std::size_t before = rel.size();
      std::erase_if(rel.rows, [&](const Type& row) {
        return !std::binary_search(common.begin(), common.end(), restrict_type(sig, row, pos));
      });
      if (rel.size() == before) continue;
      if (rel.empty()) {
        note("constraint on " + detail::scope_text(in, rel.vars) + " emptied via " + detail::scope_text(in, t));
        return detail::trivialized(std::move(in));
      }
      for (int other : items_of[c])
        if (!queued[other]) {
          queued[other] = true;
          queue.push_back(other);
        }
    }
  }
  return in;
}

/// Common projection of the covering constraints onto t (entries may repeat).
inline TypedRelation projection(const Signature& sig, const Instance& in, const std::vector<int>& t) {
  std::vector<int> s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::optional<TypedRelation> result;
  for (const auto& c : in.constraints) {
    if (!detail::covers(c.vars, s)) continue;
    auto pr = project(sig, c, s);
    if (result && result->rows != pr.rows) throw PreconditionError("projection: covering constraints disagree");
    if (!result) result = std::move(pr);
  }
  if (!result) throw PreconditionError("projection: no constraint covers the tuple");
  // re-expand to the requested tuple, repeats included
  std::vector<int> pos(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pos[i] = result->position(t[i]);
  std::vector<Type> rows;
  for (const auto& row : result->rows) rows.push_back(restrict_type(sig, row, pos));
  TypedRelation out;
  out.vars = t;
  out.rows = std::move(rows);
  out.normalize();
  return out;
}

struct Injectivized {
  Instance instance;
  /// quotient[x] = variable of the output instance that x was merged into.
  std::vector<int> quotient;
};

/// Merges variables whose pairwise projection is diagonal, then keeps only
/// injective rows. Input must be k-minimal (k >= 2) and non-trivial.
inline Injectivized injectivize(const Instance& in, const GroundStructure& g) {
  const Signature& sig = g.sig();
  const int n = in.var_count();
  if (in.trivial()) throw PreconditionError("injectivize: instance is trivial");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      auto pr = projection(sig, in, {x, y});
      bool diagonal = std::all_of(pr.rows.begin(), pr.rows.end(), [](const Type& t) { return t.cls[0] == t.cls[1]; });
      if (diagonal) parent[find(y)] = find(x);
    }
  std::vector<int> quotient(n), rep_to_new(n, -1);
  Injectivized out;
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (rep_to_new[r] < 0) {
      rep_to_new[r] = static_cast<int>(out.instance.names.size());
      out.instance.names.push_back(in.names[x]);
    }
    quotient[x] = rep_to_new[r];
  }
  for (const auto& c : in.constraints) {
    std::vector<int> scope;
    for (int x : c.vars) scope.push_back(quotient[x]);
    TypedRelation r = restrict_injective(bind_scope(sig, scope, c.rows));
    out.instance.constraints.push_back(std::move(r));
  }
  out.instance = canonical_form(sig, out.instance);
  out.quotient = std::move(quotient);
  return out;
}

}  // namespace orbitcsp
