#pragma once

// Relations over a ground structure, stored extensionally as sets of types.
// A type fixes the equality pattern of m positions and the orbit labels of the
// quotient; by k-homogeneity that is one orbit of m-tuples.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

/// One orbit of m-tuples: a partition of the positions (classes numbered in
/// order of first occurrence) and a full labeling of the class structure.
struct Type {
  Rgs cls;
  LabeledStructure quot;

  [[nodiscard]] int arity() const { return static_cast<int>(cls.size()); }
  [[nodiscard]] int classes() const { return quot.size(); }
  [[nodiscard]] bool injective() const { return quot.size() == arity(); }

  friend auto operator<=>(const Type&, const Type&) = default;
};

/// Type of the tuple whose i-th entry is vertex classes[i] of x.
inline Type make_type(const Signature& sig, std::span<const int> classes, const LabeledStructure& x) {
  std::vector<int> order;
  for (int c : classes)
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
  return Type{canonical_rgs(classes), x.induced(sig, order)};
}

/// Type of the subtuple at the given positions (repeats allowed).
inline Type restrict_type(const Signature& sig, const Type& t, std::span<const int> positions) {
  std::array<int, kMaxPoints> cl{};
  for (std::size_t i = 0; i < positions.size(); ++i) cl[i] = t.cls.at(positions[i]);
  return make_type(sig, std::span<const int>(cl.data(), positions.size()), t.quot);
}

inline Type discrete_type(const LabeledStructure& x) {
  Rgs cls(x.size());
  std::iota(cls.begin(), cls.end(), 0);
  return Type{std::move(cls), x};
}

/// An m-ary relation over variables `vars` (distinct ids) as a sorted set of types.
struct TypedRelation {
  std::vector<int> vars;
  std::vector<Type> rows;

  TypedRelation() = default;
  TypedRelation(std::vector<int> v, std::vector<Type> r) : vars(std::move(v)), rows(std::move(r)) { normalize(); }

  [[nodiscard]] int arity() const { return static_cast<int>(vars.size()); }
  [[nodiscard]] bool empty() const { return rows.empty(); }
  [[nodiscard]] std::size_t size() const { return rows.size(); }
  [[nodiscard]] bool contains(const Type& t) const { return std::binary_search(rows.begin(), rows.end(), t); }

  [[nodiscard]] int position(int var) const {
    auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end()) throw InputError("variable " + std::to_string(var) + " not in relation scope");
    return static_cast<int>(it - vars.begin());
  }
  [[nodiscard]] bool has_var(int var) const { return std::find(vars.begin(), vars.end(), var) != vars.end(); }

  void normalize() {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }

  [[nodiscard]] bool same_rows(const TypedRelation& o) const { return rows == o.rows; }

  friend bool operator==(const TypedRelation&, const TypedRelation&) = default;
};

inline TypedRelation rename(const TypedRelation& r, const std::map<int, int>& to) {
  TypedRelation out = r;
  for (auto& v : out.vars) {
    auto it = to.find(v);
    if (it != to.end()) v = it->second;
  }
  return out;
}

/// Relation of all realizable types over the given variables.
inline TypedRelation full_relation(const GroundStructure& g, std::vector<int> vars, bool injective_only = false) {
  const int m = static_cast<int>(vars.size());
  std::vector<Type> rows;
  for (const auto& rgs : partitions_of(m)) {
    int c = class_count(rgs);
    if (injective_only && c != m) continue;
    for (const auto& x : g.realizable_structures(c)) rows.push_back(Type{rgs, x});
  }
  return TypedRelation(std::move(vars), std::move(rows));
}

inline TypedRelation project(const Signature& sig, const TypedRelation& r, std::span<const int> t) {
  std::vector<int> pos(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pos[i] = r.position(t[i]);
  std::vector<Type> rows;
  rows.reserve(r.rows.size());
  for (const auto& row : r.rows) rows.push_back(restrict_type(sig, row, pos));
  return TypedRelation(std::vector<int>(t.begin(), t.end()), std::move(rows));
}

/// Reorders r2 onto r1's variable order when both range over the same set.
inline TypedRelation intersect(const Signature& sig, const TypedRelation& r1, const TypedRelation& r2) {
  if (std::set<int>(r1.vars.begin(), r1.vars.end()) != std::set<int>(r2.vars.begin(), r2.vars.end()) ||
      r1.vars.size() != r2.vars.size())
    throw InputError("intersect: relations over different variables");
  const TypedRelation aligned = r1.vars == r2.vars ? r2 : project(sig, r2, r1.vars);
  std::vector<Type> rows;
  std::set_intersection(r1.rows.begin(), r1.rows.end(), aligned.rows.begin(), aligned.rows.end(),
                        std::back_inserter(rows));
  TypedRelation out;
  out.vars = r1.vars;
  out.rows = std::move(rows);
  return out;
}

inline TypedRelation restrict_injective(const TypedRelation& r) {
  TypedRelation out;
  out.vars = r.vars;
  for (const auto& row : r.rows)
    if (row.injective()) out.rows.push_back(row);
  return out;
}

/// Conjunction of r1 and r2 followed by existential projection onto `keep`.
/// Every pair of rows that agree on the shared variables is amalgamated in all
/// possible ways (identifying classes private to either side, labeling the
/// cross k-sets); a kept type survives if some completion is realizable.
inline TypedRelation join_exists(const GroundStructure& g, const TypedRelation& r1, const TypedRelation& r2,
                                 std::span<const int> keep) {
  const Signature& sig = g.sig();
  const int k = g.k();
  {
    std::set<int> seen;
    for (int v : keep) {
      if (!seen.insert(v).second) throw InputError("join_exists: repeated variable in keep");
      if (!r1.has_var(v) && !r2.has_var(v)) throw InputError("join_exists: keep variable in neither relation");
    }
  }
  std::vector<int> shared, sp1, sp2;
  for (int i = 0; i < r1.arity(); ++i)
    if (r2.has_var(r1.vars[i])) {
      shared.push_back(r1.vars[i]);
      sp1.push_back(i);
      sp2.push_back(r2.position(r1.vars[i]));
    }

  std::map<Type, std::vector<const Type*>> groups;
  for (const auto& row : r2.rows) groups[restrict_type(sig, row, sp2)].push_back(&row);

  std::set<Type> found;
  for (const auto& a : r1.rows) {
    auto it = groups.find(restrict_type(sig, a, sp1));
    if (it == groups.end()) continue;
    const int c1 = a.classes();
    std::vector<bool> a_shared(c1, false);
    for (int p : sp1) a_shared[a.cls[p]] = true;
    std::vector<int> a_private;
    for (int c = 0; c < c1; ++c)
      if (!a_shared[c]) a_private.push_back(c);

    for (const Type* bp : it->second) {
      const Type& b = *bp;
      const int c2 = b.classes();
      std::vector<int> to(c2, -1);
      for (std::size_t s = 0; s < sp1.size(); ++s) to[b.cls[sp2[s]]] = a.cls[sp1[s]];
      std::vector<int> b_private;
      for (int c = 0; c < c2; ++c)
        if (to[c] < 0) b_private.push_back(c);
      std::vector<bool> used(c1, false);

      auto amalgamate = [&]() {
        int n = c1;
        std::vector<int> full = to;
        for (int c : b_private)
          if (full[c] < 0) full[c] = n++;
        if (n > kMaxPoints) throw BudgetError("join_exists: amalgam too large");
        LabeledStructure x(n, k);
        for (std::size_t r = 0; r < a.quot.labels().size(); ++r) x.set_rank(r, a.quot.at_rank(r));
        const auto& bsubs = subsets_of(c2, k);
        std::array<int, kMaxArity> t{};
        for (std::size_t r = 0; r < bsubs.size(); ++r) {
          for (int i = 0; i < k; ++i) t[i] = full[bsubs[r][i]];
          std::span<const int> ts(t.data(), k);
          Label have = x.get(sig, ts);
          if (have == kUnset)
            x.set(sig, ts, b.quot.at_rank(r));
          else if (have != b.quot.at_rank(r))
            return;
        }
        std::vector<int> keep_cls(keep.size());
        std::vector<bool> kept(n, false);
        for (std::size_t i = 0; i < keep.size(); ++i) {
          int v = keep[i];
          keep_cls[i] = r1.has_var(v) ? a.cls[r1.position(v)] : full[b.cls[r2.position(v)]];
          kept[keep_cls[i]] = true;
        }
        std::vector<std::size_t> out_ranks, hidden_ranks;
        const auto& subs = subsets_of(n, k);
        for (std::size_t r = 0; r < subs.size(); ++r) {
          if (x.at_rank(r) != kUnset) continue;
          bool inside = std::all_of(subs[r].begin(), subs[r].end(), [&](int v) { return kept[v]; });
          (inside ? out_ranks : hidden_ranks).push_back(r);
        }
        if (!g.bound_free(x)) return;
        for_each_completion(g, x, out_ranks, [&](const LabeledStructure& y) {
          Type t = make_type(sig, keep_cls, y);
          if (found.count(t)) return true;
          bool ok = !for_each_completion(g, x, hidden_ranks, [](const LabeledStructure&) { return false; });
          if (ok) found.insert(std::move(t));
          return true;
        });
      };

      // partial injections from b's private classes into a's private classes
      auto assign = [&](auto&& self, std::size_t i) -> void {
        if (i == b_private.size()) {
          amalgamate();
          return;
        }
        const int c = b_private[i];
        self(self, i + 1);
        for (int target : a_private) {
          if (used[target]) continue;
          used[target] = true;
          to[c] = target;
          self(self, i + 1);
          to[c] = -1;
          used[target] = false;
        }
      };
      assign(assign, 0);
    }
  }
  return TypedRelation(std::vector<int>(keep.begin(), keep.end()), {found.begin(), found.end()});
}

/// A relation with distinguished tuples u, v and relations C over u, D over v.
struct Implication {
  TypedRelation rel;
  std::vector<int> u;
  std::vector<int> v;
  TypedRelation C;
  TypedRelation D;

  [[nodiscard]] int var_count() const { return rel.arity(); }
};

struct ImplicationCheck {
  bool ok = true;
  int failed_item = 0;  // 1..5 when !ok
  explicit operator bool() const { return ok; }
};

namespace detail {

inline void check_tuple(const TypedRelation& rel, const std::vector<int>& t, const char* what) {
  std::set<int> s(t.begin(), t.end());
  if (s.size() != t.size()) throw PreconditionError(std::string(what) + " is not injective");
  for (int x : t)
    if (!rel.has_var(x)) throw PreconditionError(std::string(what) + " uses a variable outside the relation");
}

inline void check_shape(const Implication& phi) {
  check_tuple(phi.rel, phi.u, "u");
  check_tuple(phi.rel, phi.v, "v");
  std::set<int> sc(phi.u.begin(), phi.u.end());
  sc.insert(phi.v.begin(), phi.v.end());
  if (sc.size() != phi.rel.vars.size()) throw PreconditionError("scope(u) and scope(v) must cover the variables");
  if (phi.u.size() >= phi.rel.vars.size() || phi.v.size() >= phi.rel.vars.size())
    throw PreconditionError("u and v must be shorter than the variable set");
  if (phi.C.vars.size() != phi.u.size() || phi.D.vars.size() != phi.v.size())
    throw PreconditionError("C and D arities must match u and v");
  if (phi.C.empty() || phi.D.empty()) throw PreconditionError("C and D must be nonempty");
}

inline std::vector<int> positions_of(const TypedRelation& rel, const std::vector<int>& t) {
  std::vector<int> p(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) p[i] = rel.position(t[i]);
  return p;
}

inline bool strict_subset(const std::vector<Type>& a, const std::vector<Type>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

/// Checks the five implication items in order; with pre_only, item 1 is skipped.
inline ImplicationCheck is_implication(const Signature& sig, const Implication& phi, bool pre_only = false) {
  detail::check_shape(phi);
  const auto& rel = phi.rel;
  if (!pre_only) {
    for (int x = 0; x < rel.arity(); ++x)
      for (int y = x + 1; y < rel.arity(); ++y) {
        bool separated = std::any_of(rel.rows.begin(), rel.rows.end(),
                                     [&](const Type& t) { return t.cls[x] != t.cls[y]; });
        if (!separated) return {false, 1};
      }
  }
  auto pu = detail::positions_of(rel, phi.u);
  auto pv = detail::positions_of(rel, phi.v);
  if (!detail::strict_subset(phi.C.rows, project(sig, rel, phi.u).rows)) return {false, 2};
  if (!detail::strict_subset(phi.D.rows, project(sig, rel, phi.v).rows)) return {false, 3};
  std::set<Type> reached;
  for (const auto& f : rel.rows) {
    if (!phi.C.contains(restrict_type(sig, f, pu))) continue;
    Type fv = restrict_type(sig, f, pv);
    if (!phi.D.contains(fv)) return {false, 4};
    reached.insert(std::move(fv));
  }
  if (reached.size() != phi.D.size()) return {false, 5};
  return {};
}

using OpMappings = std::set<std::pair<Type, Type>>;

/// Pairs (type of f(u), type of f(v)) over the rows f of rel.
inline OpMappings op_mappings(const Signature& sig, const TypedRelation& rel, const std::vector<int>& u,
                              const std::vector<int>& v, bool injective_only = false) {
  auto pu = detail::positions_of(rel, u);
  auto pv = detail::positions_of(rel, v);
  OpMappings out;
  for (const auto& f : rel.rows) {
    if (injective_only && !f.injective()) continue;
    out.emplace(restrict_type(sig, f, pu), restrict_type(sig, f, pv));
  }
  return out;
}

inline OpMappings op_mappings(const Signature& sig, const Implication& phi, bool injective_only = false) {
  return op_mappings(sig, phi.rel, phi.u, phi.v, injective_only);
}

/// Relational composition of two mapping sets.
inline OpMappings compose_mappings(const OpMappings& a, const OpMappings& b) {
  OpMappings out;
  for (const auto& [o1, o2] : a)
    for (auto it = b.lower_bound({o2, Type{}}); it != b.end() && it->first == o2; ++it) out.emplace(o1, it->second);
  return out;
}

/// Renames variables to 0..p-1 in the order of rel.vars.
inline Implication normalized(const Implication& phi) {
  std::map<int, int> to;
  for (int i = 0; i < phi.rel.arity(); ++i) to[phi.rel.vars[i]] = i;
  Implication out;
  out.rel = rename(phi.rel, to);
  for (int x : phi.u) out.u.push_back(to.at(x));
  for (int x : phi.v) out.v.push_back(to.at(x));
  out.C = rename(phi.C, to);
  out.D = rename(phi.D, to);
  return out;
}

namespace detail {

/// Variable renaming of phi2 onto phi1 (v1 = u2, everything else fresh).
inline std::map<int, int> compose_renaming(const Implication& phi1, const Implication& phi2) {
  int fresh = 0;
  for (int x : phi1.rel.vars) fresh = std::max(fresh, x + 1);
  std::map<int, int> to;
  for (std::size_t i = 0; i < phi2.u.size(); ++i) to[phi2.u[i]] = phi1.v[i];
  for (int x : phi2.rel.vars)
    if (!to.count(x)) to[x] = fresh++;
  return to;
}

inline std::vector<int> compose_keep(const Implication& phi1, const std::vector<int>& v2) {
  std::vector<int> keep = phi1.u;
  for (int x : v2)
    if (std::find(keep.begin(), keep.end(), x) == keep.end()) keep.push_back(x);
  return keep;
}

}  // namespace detail

/// Number of variables of phi1∘phi2, computed from the tuples alone.
inline int composed_var_count(const Implication& phi1, const Implication& phi2) {
  auto to = detail::compose_renaming(phi1, phi2);
  std::vector<int> v2;
  for (int x : phi2.v) v2.push_back(to.at(x));
  return static_cast<int>(detail::compose_keep(phi1, v2).size());
}

/// phi1∘phi2 with variables renumbered from 0 (u-variables first).
inline Implication compose(const GroundStructure& g, const Implication& phi1, const Implication& phi2) {
  const Signature& sig = g.sig();
  if (phi1.v.size() != phi2.u.size()) throw PreconditionError("compose: v1 and u2 differ in length");
  if (phi1.D.rows != phi2.C.rows) throw PreconditionError("compose: D of the first factor must equal C of the second");
  if (project(sig, phi1.rel, phi1.v).rows != project(sig, phi2.rel, phi2.u).rows)
    throw PreconditionError("compose: projections onto v1 and u2 differ");
  auto to = detail::compose_renaming(phi1, phi2);
  TypedRelation rel2 = rename(phi2.rel, to);
  std::vector<int> v2;
  for (int x : phi2.v) v2.push_back(to.at(x));
  auto keep = detail::compose_keep(phi1, v2);
  Implication out;
  out.rel = join_exists(g, phi1.rel, rel2, keep);
  out.u = phi1.u;
  out.v = v2;
  out.C = phi1.C;
  out.D = rename(phi2.D, to);
  return normalized(out);
}

/// psi∘...∘psi with n factors (n >= 1).
inline Implication power(const GroundStructure& g, const Implication& psi, int n) {
  if (n < 1) throw PreconditionError("power: exponent must be positive");
  Implication result;
  bool have = false;
  Implication base = normalized(psi);
  while (n > 0) {
    if (n & 1) {
      result = have ? compose(g, result, base) : base;
      have = true;
    }
    n >>= 1;
    if (n > 0) base = compose(g, base, base);
  }
  return result;
}

inline Implication restrict_injective(const Implication& phi) {
  Implication out = phi;
  out.rel = restrict_injective(phi.rel);
  return out;
}

/// I_phi = {i : u_i in scope(v)} with sigma(i) = the j for which u_i = v_j.
inline std::map<int, int> index_map(const Implication& phi) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < phi.u.size(); ++i) {
    auto it = std::find(phi.v.begin(), phi.v.end(), phi.u[i]);
    if (it != phi.v.end()) out[static_cast<int>(i)] = static_cast<int>(it - phi.v.begin());
  }
  return out;
}

}  // namespace orbitcsp
