#pragma once

// Shared fixtures: relation shorthands and random implication generators.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbitcsp/io.hpp"
#include "orbitcsp/orbitcsp.hpp"

namespace orbitcsp::testing {

/// Relation over `vars` from the "orbit:..." shorthand of instance files.
inline TypedRelation rel(const GroundStructure& g, std::vector<int> vars, const std::string& text) {
  auto rows = io::orbit_shorthand(g, static_cast<int>(vars.size()), "orbit:" + text);
  return TypedRelation(std::move(vars), std::move(rows));
}

/// The injective k-ary type carrying `label`.
inline Type orbit(const GroundStructure& g, const std::string& label) {
  return rel(g, [&] {
    std::vector<int> v(g.k());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }(), label).rows.at(0);
}

struct Con {
  std::vector<int> scope;
  std::string text;
};

inline Instance make_instance(const GroundStructure& g, int n, const std::vector<Con>& cons) {
  Instance in;
  for (int i = 0; i < n; ++i) in.names.push_back("x" + std::to_string(i));
  for (const auto& c : cons) {
    auto rows = io::orbit_shorthand(g, static_cast<int>(c.scope.size()), "orbit:" + c.text);
    in.constraints.push_back(bind_scope(g.sig(), c.scope, rows));
  }
  return in;
}

/// Drops rows until proj_u and proj_v coincide; nullopt if nothing is left.
inline std::optional<TypedRelation> balance(const Signature& sig, TypedRelation r, const std::vector<int>& u,
                                            const std::vector<int>& v) {
  for (;;) {
    auto pu = project(sig, r, u);
    auto pv = project(sig, r, v);
    if (r.empty()) return std::nullopt;
    if (pu.rows == pv.rows) return r;
    auto pos_u = detail::positions_of(r, u);
    auto pos_v = detail::positions_of(r, v);
    std::erase_if(r.rows, [&](const Type& t) {
      return !pv.contains(restrict_type(sig, t, pos_u)) || !pu.contains(restrict_type(sig, t, pos_v));
    });
  }
}

/// Random injective relation with u = (0..k-1) and v one of (k,1..k-1),
/// (1..k-1,k), (k,k-1..1) or, for k = 2, disjoint from u; balanced so proj_u
/// = proj_v, with C = D a forward-closed proper subset of that projection.
/// Each row is kept with a probability drawn from [min_keep, min_keep + 50)
/// percent.
inline std::optional<Implication> random_self_implication(const GroundStructure& g, std::mt19937_64& rng,
                                                          unsigned min_keep = 30) {
  const Signature& sig = g.sig();
  const int k = g.k();
  const int shape = static_cast<int>(rng() % 4);
  const bool disjoint = shape == 3 && k == 2;
  const int n = disjoint ? 2 * k : k + 1;
  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::vector<int> u(vars.begin(), vars.begin() + k), v;
  if (disjoint) {
    v.assign(vars.begin() + k, vars.end());
  } else if (shape == 1) {
    v.assign(vars.begin() + 1, vars.end());
  } else {
    v = u;
    v[0] = k;
    if (shape == 2) std::reverse(v.begin() + 1, v.end());
  }
  auto full = full_relation(g, vars, true);
  std::vector<Type> rows;
  const unsigned keep = min_keep + static_cast<unsigned>(rng() % 50);
  for (const auto& t : full.rows)
    if (rng() % 100 < keep) rows.push_back(t);
  auto r = balance(sig, TypedRelation(vars, rows), u, v);
  if (!r) return std::nullopt;
  Implication phi;
  phi.rel = *r;
  phi.u = u;
  phi.v = v;
  auto e = project(sig, phi.rel, u);
  if (e.size() < 2) return std::nullopt;
  auto mappings = op_mappings(sig, phi);
  std::set<Type> closed{e.rows[rng() % e.size()]};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [a, b] : mappings)
      if (closed.count(a) && closed.insert(b).second) grew = true;
  }
  if (closed.size() == e.size()) return std::nullopt;
  phi.C = TypedRelation(u, {closed.begin(), closed.end()});
  phi.D = TypedRelation(v, {closed.begin(), closed.end()});
  return phi;
}

/// Random pair phi1, phi2 with proj_{v1} = proj_{u2} and D1 = C2; factors may
/// contain non-injective rows.
inline std::optional<std::pair<Implication, Implication>> random_compose_pair(const GroundStructure& g,
                                                                             std::mt19937_64& rng) {
  const Signature& sig = g.sig();
  const int k = g.k();
  auto make = [&](const std::vector<Type>* target) -> std::optional<Implication> {
    const int n = k + 1 + (k == 2 ? static_cast<int>(rng() % 2) : 0);
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    std::vector<int> u(vars.begin(), vars.begin() + k);
    std::vector<int> v(vars.end() - k, vars.end());
    const bool injective = rng() % 2 == 0;
    auto full = full_relation(g, vars, injective);
    std::vector<Type> rows;
    const std::size_t budget = 40;
    for (const auto& t : full.rows)
      if (rng() % full.rows.size() < budget) rows.push_back(t);
    if (target) {
      auto pu = detail::positions_of(full, u);
      std::erase_if(rows, [&](const Type& t) {
        return !std::binary_search(target->begin(), target->end(), restrict_type(sig, t, pu));
      });
    }
    TypedRelation r(vars, rows);
    if (r.empty()) return std::nullopt;
    if (target && project(sig, r, u).rows != *target) return std::nullopt;
    Implication phi;
    phi.rel = r;
    phi.u = u;
    phi.v = v;
    return phi;
  };
  auto phi1 = make(nullptr);
  if (!phi1) return std::nullopt;
  auto mid = project(sig, phi1->rel, phi1->v);
  auto phi2 = make(&mid.rows);
  if (!phi2) return std::nullopt;
  auto pick = [&](const TypedRelation& e, const std::vector<int>& over) {
    std::vector<Type> s;
    for (const auto& t : e.rows)
      if (rng() % 2) s.push_back(t);
    if (s.empty()) s.push_back(e.rows.front());
    return TypedRelation(over, s);
  };
  phi1->C = pick(project(sig, phi1->rel, phi1->u), phi1->u);
  auto shared = pick(mid, phi1->v);
  phi1->D = shared;
  phi2->C = TypedRelation(phi2->u, shared.rows);
  phi2->D = pick(project(sig, phi2->rel, phi2->v), phi2->v);
  return std::make_pair(*phi1, *phi2);
}

/// Relational composition of mapping sets, written independently of the
/// library's helper.
inline OpMappings relational_composition(const OpMappings& a, const OpMappings& b) {
  OpMappings out;
  for (const auto& [o, q] : a)
    for (const auto& [q2, p] : b)
      if (q == q2) out.emplace(o, p);
  return out;
}

}  // namespace orbitcsp::testing
