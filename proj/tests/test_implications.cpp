#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "orbitcsp/implications.hpp"
#include "orbitcsp/oracle.hpp"
#include "support.hpp"

using namespace orbitcsp;
using namespace orbitcsp::testing;

namespace {

// -1 when the two coordinates coincide
int lab(const GroundStructure& g, const Type& t, int i, int j) {
  std::vector<int> pos{i, j};
  auto r = restrict_type(g.sig(), t, pos);
  return r.injective() ? r.quot.at_rank(0) : -1;
}

// Implication over RandomGraph on (0,1) -> (2,3) realizing exactly the given
// (label, label) mappings; C = D = {E}.
Implication from_mappings(const GroundStructure& g, const std::vector<std::pair<Label, Label>>& arcs) {
  auto full = full_relation(g, {0, 1, 2, 3}, true);
  std::vector<Type> rows;
  for (auto [a, b] : arcs)
    for (const auto& t : full.rows)
      if (lab(g, t, 0, 1) == a && lab(g, t, 2, 3) == b) {
        rows.push_back(t);
        break;
      }
  Implication phi;
  phi.rel = TypedRelation({0, 1, 2, 3}, rows);
  phi.u = {0, 1};
  phi.v = {2, 3};
  phi.C = rel(g, {0, 1}, "E");
  phi.D = rel(g, {2, 3}, "E");
  return phi;
}

// lab(x,y) = lab(z,y) on three variables: u = (0,1), v = (2,1).
Implication mirror(const GroundStructure& g) {
  auto full = full_relation(g, {0, 1, 2});
  std::erase_if(full.rows, [&](const Type& t) { return lab(g, t, 0, 1) != lab(g, t, 2, 1); });
  Implication phi;
  phi.rel = full;
  phi.u = {0, 1};
  phi.v = {2, 1};
  phi.C = rel(g, {0, 1}, "E");
  phi.D = rel(g, {2, 1}, "E");
  return phi;
}

const Label E = 0;
const Label N = 1;

}  // namespace

TEST(OrbitDigraph, TwoLoops) {
  auto g = builtin::random_graph();
  auto dg = build_orbit_digraph(g.sig(), from_mappings(g, {{E, E}, {N, N}}));
  EXPECT_EQ(dg.size(), 2);
  EXPECT_TRUE(dg.has_arc(0, 0));
  EXPECT_TRUE(dg.has_arc(1, 1));
  auto s = scc_analysis(dg);
  EXPECT_EQ(s.components.size(), 2u);
  EXPECT_EQ(s.sinks.size(), 2u);
  EXPECT_EQ(s.sources.size(), 2u);
}

TEST(OrbitDigraph, SinkAndSource) {
  auto g = builtin::random_graph();
  auto dg = build_orbit_digraph(g.sig(), from_mappings(g, {{E, N}, {N, N}, {E, E}}));
  auto s = scc_analysis(dg);
  ASSERT_EQ(s.sinks.size(), 1u);
  ASSERT_EQ(s.sources.size(), 1u);
  EXPECT_EQ(dg.vertices[s.components[s.sinks[0]][0]], orbit(g, "N"));
  EXPECT_EQ(dg.vertices[s.components[s.sources[0]][0]], orbit(g, "E"));
}

TEST(OrbitDigraph, ProjectionMismatchThrows) {
  auto g = builtin::random_graph();
  EXPECT_THROW(build_orbit_digraph(g.sig(), from_mappings(g, {{E, N}})), PreconditionError);
}

TEST(OrbitDigraph, SmoothForBalancedRelations) {
  for (const auto& name : builtin::names()) {
    auto g = *builtin::by_name(name);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      auto phi = random_self_implication(g, rng);
      if (phi) {
        EXPECT_NO_THROW(build_orbit_digraph(g.sig(), *phi));
      }
    }
  }
}

TEST(SccAnalysis, ComponentFreeVertex) {
  OrbitDigraph dg{{Type{}, Type{}}, {{0, 1}, {1, 1}}};
  auto s = scc_analysis(dg);
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.components[0], (std::vector<int>{1}));
  EXPECT_EQ(s.sinks, (std::vector<int>{0}));
  EXPECT_EQ(s.component_free, (std::vector<int>{0}));
}

TEST(SccAnalysis, MatchesReachabilityOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    OrbitDigraph dg{std::vector<Type>(n), {}};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (rng() % 4 == 0) {
          dg.arcs.emplace(a, b);
        }
    // oracle: BFS from every vertex
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int s = 0; s < n; ++s) {
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : dg.arcs)
          if (a == x && !reach[s][b]) {
            reach[s][b] = true;
            stack.push_back(b);
          }
      }
    }
    auto an = scc_analysis(dg);
    for (int x = 0; x < n; ++x) {
      EXPECT_EQ(an.component_of[x] < 0, !reach[x][x]);
      for (int y = 0; y < n; ++y)
        if (an.component_of[x] >= 0 && an.component_of[y] >= 0) {
          EXPECT_EQ(an.component_of[x] == an.component_of[y], reach[x][y] && reach[y][x]);
        }
    }
    for (int c : an.sinks)
      for (const auto& [a, b] : dg.arcs)
        if (an.component_of[a] == c) {
          EXPECT_EQ(an.component_of[b], c);
        }
  }
}

TEST(IsComplete, TwoCycleWithoutLoopsIsIncomplete) {
  auto g = builtin::random_graph();
  EXPECT_FALSE(is_complete(g, from_mappings(g, {{E, N}, {N, E}})));
}

TEST(IsComplete, LoopsOnlyIsComplete) {
  auto g = builtin::random_graph();
  EXPECT_TRUE(is_complete(g, from_mappings(g, {{E, E}, {N, N}})));
  EXPECT_TRUE(is_complete(g, from_mappings(g, {{E, E}, {E, N}, {N, E}, {N, N}})));
}

TEST(IsComplete, ShiftedTupleIsIncomplete) {
  // u = (0,1), v = (2,1) keeps the count but u_2 = v_2 only at matching index
  auto g = builtin::random_graph();
  auto phi = mirror(g);
  EXPECT_TRUE(is_complete(g, phi));
  Implication swapped = phi;
  swapped.v = {1, 2};
  EXPECT_FALSE(is_complete(g, swapped));
}

TEST(Complete, AlreadyCompleteIsUnchanged) {
  auto g = builtin::random_graph();
  auto phi = from_mappings(g, {{E, E}, {N, N}});
  EXPECT_EQ(complete(g, phi).rel, normalized(phi).rel);
}

TEST(Complete, TwoCycleSquaresToLoops) {
  auto g = builtin::random_graph();
  auto psi = complete(g, from_mappings(g, {{E, N}, {N, E}}));
  EXPECT_TRUE(is_complete(g, psi));
  auto dg = build_orbit_digraph(g.sig(), psi);
  EXPECT_EQ(dg.arcs, (std::set<std::pair<int, int>>{{0, 0}, {1, 1}}));
}

TEST(Complete, WalkIntoALoopClosesTheComponent) {
  auto g = builtin::random_graph();
  auto psi = complete(g, from_mappings(g, {{E, N}, {N, E}, {N, N}}));
  EXPECT_TRUE(is_complete(g, psi));
  EXPECT_EQ(build_orbit_digraph(g.sig(), psi).arcs.size(), 4u);
}

TEST(Complete, RandomSeedsAreCompleteAndIdempotent) {
  for (const auto& name : builtin::names()) {
    auto g = *builtin::by_name(name);
    std::mt19937_64 rng(29);
    int done = 0;
    for (int trial = 0; trial < 2000 && done < 20; ++trial) {
      auto phi = random_self_implication(g, rng);
      if (!phi) continue;
      ++done;
      auto psi = complete(g, *phi);
      ASSERT_TRUE(is_complete(g, psi)) << name;
      EXPECT_EQ(complete(g, psi).rel, psi.rel);
      if (psi.var_count() > g.k() + 2) continue;  // squaring is too slow
      auto sq = restrict_injective(compose(g, psi, psi));
      EXPECT_EQ(op_mappings(g.sig(), sq), op_mappings(g.sig(), psi)) << name;
    }
    EXPECT_EQ(done, 20) << name;
  }
}

TEST(Complete, PowersFollowWalks) {
  // O reaches P in the n-th power iff a walk of length n joins them
  for (const auto& name : builtin::names()) {
    auto g = *builtin::by_name(name);
    std::mt19937_64 rng(37);
    int done = 0;
    for (int trial = 0; trial < 1000 && done < 8; ++trial) {
      auto phi = random_self_implication(g, rng);
      if (!phi || composed_var_count(*phi, *phi) != phi->var_count()) continue;
      ++done;
      auto base = op_mappings(g.sig(), *phi);
      auto walks = base;
      for (int n = 2; n <= 4; ++n) {
        walks = relational_composition(walks, base);
        EXPECT_EQ(op_mappings(g.sig(), power(g, *phi, n)), walks) << name << " n=" << n;
      }
    }
  }
}

TEST(IsCritical, MirrorRelationIsCritical) {
  auto g = builtin::random_graph();
  auto phi = mirror(g);
  auto chk = is_critical(g, phi, rel(g, {0, 1}, "E"), rel(g, {0, 1}, "N"));
  EXPECT_TRUE(chk) << chk.reason;
}

TEST(IsCritical, MissingCCRowFailsItemTwo) {
  auto g = builtin::random_graph();
  auto phi = mirror(g);
  // drop the all-E triangle, an EE-mapping
  std::erase_if(phi.rel.rows, [&](const Type& t) { return lab(g, t, 0, 1) == E && lab(g, t, 0, 2) == E; });
  auto chk = is_critical(g, phi, rel(g, {0, 1}, "E"), rel(g, {0, 1}, "N"));
  EXPECT_FALSE(chk);
  EXPECT_EQ(chk.failed_item, 2);
}

TEST(IsCritical, ShapeErrors) {
  auto g = builtin::random_graph();
  auto phi = mirror(g);
  EXPECT_THROW(is_critical(g, phi, rel(g, {0, 1}, "E"), rel(g, {0, 1}, "E")), PreconditionError);
  Implication bad = phi;
  bad.u = {1, 0};
  bad.v = {1, 2};
  EXPECT_THROW(is_critical(g, bad, rel(g, {0, 1}, "E"), rel(g, {0, 1}, "N")), PreconditionError);
}

TEST(BuildCritical, LengthOneCycleOnAHardTemplate) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : builtin::names()) {
    auto g = *builtin::by_name(name);
    const int k = g.k();
    std::vector<int> vars(k + 1);
    std::iota(vars.begin(), vars.end(), 0);
    std::vector<int> u(vars.begin(), vars.end() - 1), v = u;
    v[0] = k;
    auto full = full_relation(g, vars, true);
    std::erase_if(full.rows, [&](const Type& t) {
      return restrict_type(g.sig(), t, u).quot.at_rank(0) != restrict_type(g.sig(), t, v).quot.at_rank(0);
    });
    Implication phi;
    phi.rel = full;
    phi.u = u;
    phi.v = v;
    auto pu = project(g.sig(), phi.rel, u);
    phi.C = TypedRelation(u, {pu.rows[0]});
    phi.D = TypedRelation(v, {pu.rows[0]});
    ASSERT_TRUE(is_implication(g.sig(), phi)) << name;
    auto crit = build_critical_from_cycle(g, {phi});
    auto chk = is_critical(g, crit.phi, crit.C, crit.D);
    EXPECT_TRUE(chk) << name << ": " << chk.reason;
    EXPECT_EQ(crit.C.rows, std::vector<Type>{pu.rows[0]});
    EXPECT_EQ(crit.D.rows, std::vector<Type>{pu.rows[1]});
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
}

TEST(BuildCritical, EmptyCycleIsRejected) {
  auto g = builtin::random_graph();
  EXPECT_THROW(build_critical_from_cycle(g, {}), PreconditionError);
}

TEST(BuildCritical, MismatchedEndpointsAreRejected) {
  auto g = builtin::random_graph();
  auto a = mirror(g);
  auto b = mirror(g);
  b.C = rel(g, {0, 1}, "N");
  b.D = rel(g, {2, 1}, "N");
  EXPECT_THROW(build_critical_from_cycle(g, {a, b}), PreconditionError);
}

TEST(ImplGraph, SingleOrbitProjectionsGiveNoVertices) {
  auto g = builtin::random_graph();
  auto in = saturate(make_instance(g, 3, {{{0, 1}, "E"}, {{1, 2}, "N"}, {{0, 2}, "E"}}), solver_params(g), g);
  auto graph = build_instance_impl_graph(in, g, 3);
  EXPECT_TRUE(graph.vertices.empty());
  EXPECT_TRUE(find_cycle(graph).empty());
}

TEST(ImplGraph, OrbitEquivalenceGivesArcsBothWays) {
  auto g = builtin::random_graph();
  auto in = saturate(make_instance(g, 3, {{{0, 1, 2}, "E,E,E|E,N,E|N,E,N|N,N,N"}}), solver_params(g), g);
  auto graph = build_instance_impl_graph(in, g, 1);
  int a = graph.index_of({{0, 1}, {orbit(g, "E")}});
  int b = graph.index_of({{1, 2}, {orbit(g, "E")}});
  ASSERT_GE(a, 0);
  ASSERT_GE(b, 0);
  EXPECT_TRUE(graph.has_arc(a, b));
  EXPECT_TRUE(graph.has_arc(b, a));
  EXPECT_FALSE(find_cycle(graph).empty());
}

TEST(ImplGraph, CycleThroughTwoConstraintsAtDepthTwo) {
  // lab(x0,x1) = lab(x1,x2) = lab(x2,x3); (x0,x1) and (x2,x3) share no constraint
  auto g = builtin::random_graph();
  auto in = saturate(make_instance(g, 4, {{{0, 1, 2}, "E,E,E|E,N,E|N,E,N|N,N,N"},
                                          {{1, 2, 3}, "E,E,E|E,N,E|N,E,N|N,N,N"}}),
                     solver_params(g), g);
  auto shallow = build_instance_impl_graph(in, g, 1);
  auto graph = build_instance_impl_graph(in, g, 2);
  const int a = graph.index_of({{0, 1}, {orbit(g, "E")}});
  const int b = graph.index_of({{2, 3}, {orbit(g, "E")}});
  EXPECT_FALSE(shallow.has_arc(a, b));
  EXPECT_TRUE(graph.has_arc(a, b));
  EXPECT_TRUE(graph.has_arc(b, a));
  auto cyc = find_cycle(graph);
  ASSERT_FALSE(cyc.empty());
  for (std::size_t i = 0; i < cyc.size(); ++i)
    EXPECT_EQ(graph.arcs[cyc[i]].to, graph.arcs[cyc[(i + 1) % cyc.size()]].from);
  bool deep = false;
  for (const auto& e : graph.arcs) deep |= e.depth == 2;
  EXPECT_TRUE(deep);
}

TEST(ImplGraph, EveryArcIsAnImplication) {
  for (const auto& name : builtin::names()) {
    auto g = *builtin::by_name(name);
    auto p = solver_params(g);
    int arcs = 0;
    for (int s = 0; s < 40; ++s) {
      RandomInstanceParams prm;
      prm.vars = 4;
      prm.constraints = 3;
      prm.density = 0.4;
      auto in = saturate(random_instance(g, prm, 500 + s), p, g);
      if (in.trivial()) continue;
      in = saturate(injectivize(in, g).instance, p, g);
      if (in.trivial()) continue;
      auto graph = build_instance_impl_graph(in, g, 2);
      for (const auto& e : graph.arcs) {
        ++arcs;
        EXPECT_TRUE(is_implication(g.sig(), e.witness)) << name;
        EXPECT_EQ(e.witness.C.rows, graph.vertices[e.from].F);
        EXPECT_EQ(e.witness.D.rows, graph.vertices[e.to].F);
        EXPECT_NE(e.from, e.to);
      }
    }
    EXPECT_GT(arcs, 0) << name;
  }
}

TEST(ImplGraph, DotDeclaresCounts) {
  auto g = builtin::random_graph();
  auto in = saturate(make_instance(g, 3, {{{0, 1, 2}, "E,E,E|E,N,E|N,E,N|N,N,N"}}), solver_params(g), g);
  auto graph = build_instance_impl_graph(in, g, 2);
  auto dot = to_dot(g.sig(), in, graph);
  EXPECT_EQ(dot.rfind("// vertices=" + std::to_string(graph.vertices.size()) + " arcs=" +
                          std::to_string(graph.arcs.size()),
                      0),
            0u);
  EXPECT_NE(dot.find("digraph impl {"), std::string::npos);
}
