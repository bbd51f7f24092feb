#pragma once

// Orbit digraphs of implications, completion, critical relations and the
// implication graph of a minimal injective instance.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"
#include "orbitcsp/minimality.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

struct OrbitDigraph {
  std::vector<Type> vertices;
  std::set<std::pair<int, int>> arcs;

  [[nodiscard]] int size() const { return static_cast<int>(vertices.size()); }
  [[nodiscard]] bool has_arc(int a, int b) const { return arcs.count({a, b}) > 0; }
  [[nodiscard]] int index_of(const Type& t) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), t);
    return it != vertices.end() && *it == t ? static_cast<int>(it - vertices.begin()) : -1;
  }
};

/// Arcs are the op-mappings of phi; vertices the orbits of proj_u = proj_v.
inline OrbitDigraph build_orbit_digraph(const Signature& sig, const Implication& phi) {
  auto eu = project(sig, phi.rel, phi.u);
  auto ev = project(sig, phi.rel, phi.v);
  if (eu.rows != ev.rows) throw PreconditionError("orbit digraph: proj_u and proj_v differ");
  OrbitDigraph g{eu.rows, {}};
  for (const auto& [o, p] : op_mappings(sig, phi)) g.arcs.emplace(g.index_of(o), g.index_of(p));
  for (int x = 0; x < g.size(); ++x) {
    bool out = false, in = false;
    for (const auto& [a, b] : g.arcs) {
      out |= a == x;
      in |= b == x;
    }
    if (!out || !in) throw std::logic_error("orbit digraph is not smooth");
  }
  return g;
}

struct SccAnalysis {
  /// Strongly connected components in the sense that every pair of members,
  /// a member with itself included, is joined by a path. Sorted members,
  /// components ordered by smallest member.
  std::vector<std::vector<int>> components;
  std::vector<int> sinks;    // indices into components
  std::vector<int> sources;  // indices into components
  std::vector<int> component_free;
  std::vector<int> component_of;  // -1 for component-free vertices
};

inline SccAnalysis scc_analysis(const OrbitDigraph& g) {
  const int n = g.size();
  // reachability by one or more arcs
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : g.arcs) reach[a][b] = true;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      if (reach[a][m])
        for (int b = 0; b < n; ++b)
          if (reach[m][b]) reach[a][b] = true;
  SccAnalysis out;
  out.component_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!reach[x][x]) {
      out.component_free.push_back(x);
      continue;
    }
    if (out.component_of[x] >= 0) continue;
    std::vector<int> comp;
    for (int y = 0; y < n; ++y)
      if (reach[x][y] && reach[y][x]) comp.push_back(y);
    for (int y : comp) out.component_of[y] = static_cast<int>(out.components.size());
    out.components.push_back(std::move(comp));
  }
  for (int c = 0; c < static_cast<int>(out.components.size()); ++c) {
    bool sink = true, source = true;
    for (const auto& [a, b] : g.arcs) {
      if (out.component_of[a] == c && out.component_of[b] != c) sink = false;
      if (out.component_of[b] == c && out.component_of[a] != c) source = false;
    }
    if (sink) out.sinks.push_back(c);
    if (source) out.sources.push_back(c);
  }
  return out;
}

inline bool components_complete(const OrbitDigraph& g, const SccAnalysis& s) {
  for (const auto& comp : s.components)
    for (int a : comp)
      for (int b : comp)
        if (!g.has_arc(a, b)) return false;
  return true;
}

/// Stable variable count under self-composition, u_i = v_i on I_phi, and
/// every strongly connected component a complete digraph with loops.
inline bool is_complete(const GroundStructure& g, const Implication& phi) {
  if (composed_var_count(phi, phi) != phi.var_count()) return false;
  for (const auto& [i, j] : index_map(phi))
    if (i != j) return false;
  auto dg = build_orbit_digraph(g.sig(), phi);
  return components_complete(dg, scc_analysis(dg));
}

namespace detail {

inline Implication skeleton(const Implication& phi) {
  Implication s = phi;
  s.rel.rows.clear();
  s.C.rows.clear();
  s.D.rows.clear();
  return s;
}

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m)
      if (a[i][m])
        for (std::size_t j = 0; j < n; ++j)
          if (b[m][j]) c[i][j] = true;
  return c;
}

inline BoolMatrix adjacency(const OrbitDigraph& g) {
  BoolMatrix m(g.size(), std::vector<bool>(g.size(), false));
  for (const auto& [a, b] : g.arcs) m[a][b] = true;
  return m;
}

}  // namespace detail

/// Completion by powers: stabilize the variable count, make the index map the
/// identity, then take the power at which the orbit digraph becomes
/// idempotent, restricted to injective rows. Repeats until complete.
inline Implication complete(const GroundStructure& g, const Implication& phi_in) {
  constexpr int kMaxRounds = 8;
  constexpr int kMaxExponent = 720;
  Implication phi = normalized(phi_in);
  for (int round = 0; round < kMaxRounds; ++round) {
    if (is_complete(g, phi)) return phi;
    // smallest n0 <= k with a stable index-map domain
    int n0 = 1;
    for (; n0 < g.k(); ++n0) {
      auto s = power(g, detail::skeleton(phi), n0);
      if (composed_var_count(s, s) == s.var_count()) break;
    }
    if (n0 > 1) phi = power(g, phi, n0);
    int order = 1;
    for (int e = 1; e <= kMaxExponent; ++e) {
      auto s = power(g, detail::skeleton(phi), e);
      auto m = index_map(s);
      if (std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.first == kv.second; }) &&
          composed_var_count(s, s) == s.var_count()) {
        order = e;
        break;
      }
      if (e == kMaxExponent) throw BudgetError("complete: index map does not stabilize");
    }
    if (order > 1) phi = power(g, phi, order);
    auto adj = detail::adjacency(build_orbit_digraph(g.sig(), phi));
    int exponent = 0;
    auto bn = adj;
    for (int e = 1; e <= kMaxExponent; ++e) {
      if (detail::bool_product(bn, bn) == bn) {
        exponent = e;
        break;
      }
      bn = detail::bool_product(bn, adj);
    }
    if (exponent == 0) throw BudgetError("complete: digraph powers do not stabilize");
    phi = restrict_injective(power(g, phi, exponent));
    if (project(g.sig(), phi.rel, phi.u).rows != project(g.sig(), phi.rel, phi.v).rows)
      throw BudgetError("complete: injective restriction changed the end projections");
  }
  if (is_complete(g, phi)) return phi;
  throw BudgetError("complete: no complete power found within the round limit");
}

/// Items of the critical-relation definition for a (k+1)-variable implication
/// phi with tuples u, v; C and D are k-ary injective relations (any scope).
struct CriticalCheck {
  bool ok = true;
  int failed_item = 0;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline CriticalCheck is_critical(const GroundStructure& g, const Implication& phi, const TypedRelation& c,
                                 const TypedRelation& d) {
  const Signature& sig = g.sig();
  const int k = g.k();
  if (phi.var_count() != k + 1) throw PreconditionError("is_critical: need k+1 variables");
  if (static_cast<int>(phi.u.size()) != k || static_cast<int>(phi.v.size()) != k)
    throw PreconditionError("is_critical: u and v must have length k");
  std::set<int> common;
  for (int x : phi.u)
    if (std::find(phi.v.begin(), phi.v.end(), x) != phi.v.end()) common.insert(x);
  if (common.count(phi.u[0]) || common.count(phi.v[0]))
    throw PreconditionError("is_critical: u_1 and v_1 must lie outside scope(u) ∩ scope(v)");
  if (c.arity() != k || d.arity() != k) throw PreconditionError("is_critical: C and D must be k-ary");
  for (const auto* rel : {&c, &d})
    for (const auto& t : rel->rows)
      if (!t.injective()) throw PreconditionError("is_critical: C and D must be injective");
  for (const auto& t : c.rows)
    if (d.contains(t)) throw PreconditionError("is_critical: C and D must be disjoint");

  Implication cc = phi;
  cc.C = TypedRelation(phi.u, c.rows);
  cc.D = TypedRelation(phi.v, c.rows);
  if (auto chk = is_implication(sig, cc); !chk)
    return {false, 1, "not a (C,u,C,v)-implication (item " + std::to_string(chk.failed_item) + ")"};
  if (!is_complete(g, cc)) return {false, 1, "implication is not complete"};

  auto pu = detail::positions_of(phi.rel, phi.u);
  auto pv = detail::positions_of(phi.rel, phi.v);
  auto all = full_relation(g, phi.rel.vars);
  for (const auto* rel : {&c, &d})
    for (const auto& f : all.rows)
      if (rel->contains(restrict_type(sig, f, pu)) && rel->contains(restrict_type(sig, f, pv)) &&
          !phi.rel.contains(f))
        return {false, 2, rel == &c ? "missing a CC mapping" : "missing a DD mapping"};
  return {};
}

struct CriticalResult {
  Implication phi;  // (C,u,C,v)-implication on variables 0..k, u = (0..k-1), v = (k,1..k-1)
  TypedRelation C;  // over u
  TypedRelation D;  // over u
};

/// Composes a cycle of implications into a critical relation.
inline CriticalResult build_critical_from_cycle(const GroundStructure& g, const std::vector<Implication>& cycle) {
  const Signature& sig = g.sig();
  const int k = g.k();
  if (cycle.empty()) throw PreconditionError("build_critical_from_cycle: empty cycle");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& a = cycle[i];
    const auto& b = cycle[(i + 1) % cycle.size()];
    if (static_cast<int>(a.u.size()) != k || static_cast<int>(a.v.size()) != k)
      throw PreconditionError("build_critical_from_cycle: implications must be k-ary");
    if (a.D.rows != b.C.rows || project(sig, a.rel, a.v).rows != project(sig, b.rel, b.u).rows)
      throw PreconditionError("build_critical_from_cycle: cycle endpoints do not match");
  }
  Implication phi = normalized(cycle[0]);
  for (std::size_t i = 1; i < cycle.size(); ++i) phi = compose(g, phi, cycle[i]);
  phi = restrict_injective(phi);
  const TypedRelation c1 = phi.C;
  Implication psi = complete(g, phi);

  auto dg = build_orbit_digraph(sig, psi);
  auto scc = scc_analysis(dg);
  auto inside = [&](int comp, bool in_c1) {
    return std::all_of(scc.components[comp].begin(), scc.components[comp].end(),
                       [&](int x) { return c1.contains(dg.vertices[x]) == in_c1; });
  };
  std::optional<int> sink, source;
  for (int s : scc.sinks)
    if (!sink && inside(s, true)) sink = s;
  for (int s : scc.sources)
    if (!source && inside(s, false)) source = s;
  if (!sink || !source) throw PreconditionError("build_critical_from_cycle: no sink inside C or source outside C");
  std::vector<Type> crows, drows;
  for (int x : scc.components[*sink]) crows.push_back(dg.vertices[x]);
  for (int x : scc.components[*source]) drows.push_back(dg.vertices[x]);
  psi.C = TypedRelation(psi.u, crows);
  psi.D = TypedRelation(psi.v, crows);

  Implication rho = power(g, psi, g.d());
  auto sigma = index_map(rho);
  int i0 = -1;
  for (int i = 0; i < k && i0 < 0; ++i)
    if (!sigma.count(i)) i0 = i;
  if (i0 < 0) throw PreconditionError("build_critical_from_cycle: scope(u) = scope(v)");

  std::vector<int> order{i0};
  for (int i = 0; i < k; ++i)
    if (i != i0) order.push_back(i);
  std::vector<int> u, v;
  for (int i : order) {
    u.push_back(rho.u[i]);
    v.push_back(rho.v[i]);
  }
  // identify v_i with u_i for every i != i0
  std::vector<int> scope = rho.rel.vars;
  for (auto& x : scope)
    for (int i = 1; i < k; ++i)
      if (x == v[i]) x = u[i];
  TypedRelation merged = bind_scope(sig, scope, rho.rel.rows);
  std::map<int, int> to;
  for (int i = 0; i < k; ++i) to[u[i]] = i;
  to[v[0]] = k;
  std::vector<int> new_vars;
  for (int x = 0; x <= k; ++x) new_vars.push_back(x);
  TypedRelation renamed = rename(merged, to);
  CriticalResult out;
  out.phi.rel = project(sig, renamed, new_vars);
  out.phi.u = new_vars;
  out.phi.u.pop_back();
  out.phi.v = out.phi.u;
  out.phi.v[0] = k;
  out.C = project(sig, TypedRelation(rho.u, crows), u);
  out.C.vars = out.phi.u;
  out.D = project(sig, TypedRelation(rho.u, drows), u);
  out.D.vars = out.phi.u;
  out.phi.C = TypedRelation(out.phi.u, out.C.rows);
  out.phi.D = TypedRelation(out.phi.v, out.C.rows);
  return out;
}

// ---------------------------------------------------------------------------
// implication graph of an instance

struct ImplVertex {
  std::vector<int> tuple;  // sorted injective k-subset of instance variables
  std::vector<Type> F;     // proper nonempty subset of the projection rows
  friend auto operator<=>(const ImplVertex&, const ImplVertex&) = default;
};

struct ImplArc {
  int from = 0;
  int to = 0;
  int depth = 1;
  Implication witness;  // (F_from, u, F_to, v) over its own variable ids
};

struct ImplGraph {
  std::vector<ImplVertex> vertices;                    // sorted
  std::map<std::vector<int>, TypedRelation> projections;  // per injective k-subset
  std::vector<ImplArc> arcs;

  [[nodiscard]] int index_of(const ImplVertex& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    return it != vertices.end() && *it == v ? static_cast<int>(it - vertices.begin()) : -1;
  }
  [[nodiscard]] bool has_arc(int a, int b) const {
    return std::any_of(arcs.begin(), arcs.end(), [&](const ImplArc& e) { return e.from == a && e.to == b; });
  }
  [[nodiscard]] std::vector<int> out_degree() const {
    std::vector<int> d(vertices.size(), 0);
    for (const auto& e : arcs) ++d[e.from];
    return d;
  }
};

namespace detail {

/// Image of F (rows over u) through the rows of rel, as rows over v.
inline std::vector<Type> image(const Signature& sig, const TypedRelation& rel, const std::vector<int>& u,
                               const std::vector<int>& v, const std::vector<Type>& f) {
  auto pu = positions_of(rel, u);
  auto pv = positions_of(rel, v);
  std::set<Type> out;
  for (const auto& row : rel.rows)
    if (std::binary_search(f.begin(), f.end(), restrict_type(sig, row, pu))) out.insert(restrict_type(sig, row, pv));
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Vertices (proj_a(I), F) and arcs witnessed by projections of single
/// constraints onto a ∪ b (depth 1) and their compositions (depth <= depth).
inline ImplGraph build_instance_impl_graph(const Instance& in, const GroundStructure& g, int depth) {
  constexpr int kMaxRowsPerVertex = 12;
  const Signature& sig = g.sig();
  const int k = g.k();
  if (depth < 1) throw PreconditionError("impl graph: depth must be at least 1");
  ImplGraph graph;
  const int n = in.var_count();
  if (n < k) return graph;
  for (const auto& a : subsets_lex(n, k)) {
    TypedRelation p = restrict_injective(projection(sig, in, a));
    if (p.size() > static_cast<std::size_t>(kMaxRowsPerVertex))
      throw BudgetError("impl graph: too many rows in a projection");
    const std::size_t m = p.size();
    for (std::uint32_t mask = 1; m >= 2 && mask + 1 < (1u << m); ++mask) {
      ImplVertex vx{a, {}};
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) vx.F.push_back(p.rows[i]);
      graph.vertices.push_back(std::move(vx));
    }
    graph.projections.emplace(a, std::move(p));
  }
  std::sort(graph.vertices.begin(), graph.vertices.end());
  if (graph.vertices.empty()) return graph;

  std::set<std::pair<int, int>> known;
  auto try_arc = [&](int from, const Implication& w, const std::vector<Type>& img, const std::vector<int>& b,
                     int d) -> bool {
    const auto& pb = graph.projections.at(b);
    if (img.empty() || img.size() >= pb.size()) return false;
    int to = graph.index_of(ImplVertex{b, img});
    if (to < 0 || to == from || known.count({from, to})) return false;
    Implication phi = w;
    phi.D = TypedRelation(w.v, img);
    if (!is_implication(sig, phi)) return false;
    known.emplace(from, to);
    graph.arcs.push_back(ImplArc{from, to, d, std::move(phi)});
    return true;
  };

  // depth 1: one constraint projected onto a ∪ b
  std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<Type>>> witnesses;
  for (const auto& c : in.constraints) {
    if (c.arity() <= k) continue;
    for (const auto& a : subsets_lex(c.arity(), k))
      for (const auto& b : subsets_lex(c.arity(), k)) {
        if (a == b) continue;
        std::vector<int> av, bv;
        for (int i : a) av.push_back(c.vars[i]);
        for (int i : b) bv.push_back(c.vars[i]);
        std::vector<int> ab = av;
        for (int x : bv)
          if (std::find(ab.begin(), ab.end(), x) == ab.end()) ab.push_back(x);
        std::sort(ab.begin(), ab.end());
        TypedRelation w = restrict_injective(project(sig, c, ab));
        if (!witnesses.emplace(av, bv, w.rows).second) continue;
        if (w.rows.empty() || project(sig, w, av).rows != graph.projections.at(av).rows ||
            project(sig, w, bv).rows != graph.projections.at(bv).rows)
          continue;
        for (int from = 0; from < static_cast<int>(graph.vertices.size()); ++from) {
          const auto& vx = graph.vertices[from];
          if (vx.tuple != av) continue;
          Implication phi{w, av, bv, TypedRelation(av, vx.F), TypedRelation(bv, {})};
          try_arc(from, phi, detail::image(sig, w, av, bv, vx.F), bv, 1);
        }
      }
  }

  // deeper: compose the previous frontier with depth-1 arcs
  std::vector<std::size_t> frontier(graph.arcs.size());
  std::iota(frontier.begin(), frontier.end(), 0);
  const std::size_t base = graph.arcs.size();
  for (int d = 2; d <= depth && !frontier.empty(); ++d) {
    std::vector<std::size_t> next;
    for (std::size_t fi : frontier)
      for (std::size_t j = 0; j < base; ++j) {
        if (graph.arcs[fi].to != graph.arcs[j].from) continue;
        const int from = graph.arcs[fi].from;
        const auto& target = graph.vertices[graph.arcs[j].to];
        if (from == graph.arcs[j].to) continue;
        Implication w1 = graph.arcs[fi].witness;
        Implication w2 = graph.arcs[j].witness;
        Implication comp = restrict_injective(compose(g, w1, w2));
        if (comp.rel.empty()) continue;
        const auto& pa = graph.projections.at(graph.vertices[from].tuple);
        if (project(sig, comp.rel, comp.u).rows != pa.rows ||
            project(sig, comp.rel, comp.v).rows != graph.projections.at(target.tuple).rows)
          continue;
        comp.C = TypedRelation(comp.u, graph.vertices[from].F);
        auto img = detail::image(sig, comp.rel, comp.u, comp.v, graph.vertices[from].F);
        if (try_arc(from, comp, img, target.tuple, d)) next.push_back(graph.arcs.size() - 1);
      }
    frontier = std::move(next);
  }
  return graph;
}

/// Arc indices of a directed cycle, empty when the graph is acyclic.
inline std::vector<int> find_cycle(const ImplGraph& graph) {
  const int n = static_cast<int>(graph.vertices.size());
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < static_cast<int>(graph.arcs.size()); ++i) out[graph.arcs[i].from].push_back(i);
  std::vector<int> state(n, 0), via(n, -1);
  std::vector<int> cycle;
  auto dfs = [&](auto&& self, int x) -> bool {
    state[x] = 1;
    for (int e : out[x]) {
      int y = graph.arcs[e].to;
      if (state[y] == 1) {
        cycle.push_back(e);
        for (int z = x; z != y; z = graph.arcs[via[z]].from) cycle.push_back(via[z]);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
      if (state[y] == 0) {
        via[y] = e;
        if (self(self, y)) return true;
      }
    }
    state[x] = 2;
    return false;
  };
  for (int x = 0; x < n; ++x)
    if (state[x] == 0 && dfs(dfs, x)) return cycle;
  return {};
}

inline std::string type_text(const Signature& sig, const Type& t) {
  std::string s;
  if (!t.injective()) {
    s += "[";
    for (auto c : t.cls) s += std::to_string(c);
    s += "]";
  }
  for (std::size_t r = 0; r < t.quot.labels().size(); ++r) s += sig.name(t.quot.at_rank(r));
  return s.empty() ? "-" : s;
}

inline std::string vertex_text(const Signature& sig, const Instance& in, const ImplVertex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.tuple.size(); ++i) s += (i ? "," : "") + in.names.at(v.tuple[i]);
  s += "):{";
  for (std::size_t i = 0; i < v.F.size(); ++i) s += (i ? "," : "") + type_text(sig, v.F[i]);
  return s + "}";
}

inline std::string to_dot(const Signature& sig, const Instance& in, const ImplGraph& graph) {
  std::ostringstream os;
  os << "// vertices=" << graph.vertices.size() << " arcs=" << graph.arcs.size() << "\n";
  os << "digraph impl {\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << vertex_text(sig, in, graph.vertices[i]) << "\"];\n";
  for (const auto& e : graph.arcs) os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.depth << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const Signature& sig, const OrbitDigraph& g) {
  std::ostringstream os;
  os << "digraph orbits {\n";
  for (int i = 0; i < g.size(); ++i) os << "  o" << i << " [label=\"" << type_text(sig, g.vertices[i]) << "\"];\n";
  for (const auto& [a, b] : g.arcs) os << "  o" << a << " -> o" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace orbitcsp
