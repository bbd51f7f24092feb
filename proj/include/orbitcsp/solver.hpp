#pragma once

// Decision procedure: (k, max(k+1,b))-minimality, injectivization, and the
// sink-restriction loop, with a verified certificate for every Sat answer.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitcsp/error.hpp"
#include "orbitcsp/implications.hpp"
#include "orbitcsp/minimality.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

/// A solution up to automorphism: quotient[x] is the vertex of `structure`
/// assigned to variable x.
struct Certificate {
  LabeledStructure structure;
  std::vector<int> quotient;
};

inline bool verify_certificate(const Instance& in, const GroundStructure& g, const Certificate& cert) {
  if (static_cast<int>(cert.quotient.size()) != in.var_count()) return false;
  if (cert.structure.arity() != g.k() || !cert.structure.fully_labeled()) return false;
  for (int q : cert.quotient)
    if (q < 0 || q >= cert.structure.size()) return false;
  if (!realizable(cert.structure, g)) return false;
  for (const auto& c : in.constraints) {
    std::vector<int> cls;
    for (int x : c.vars) cls.push_back(cert.quotient[x]);
    if (!c.contains(make_type(g.sig(), cls, cert.structure))) return false;
  }
  return true;
}

inline MinimalityParams solver_params(const GroundStructure& g) { return {g.k(), std::max(g.k() + 1, g.b())}; }

/// Reads off the unique type of a minimal instance whose k-subset
/// projections are all single rows.
inline Certificate extract_solution(const Instance& in, const GroundStructure& g) {
  const Signature& sig = g.sig();
  const int n = in.var_count();
  const int k = g.k();
  if (in.trivial()) throw PreconditionError("extract_solution: trivial instance");
  std::vector<int> quotient(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < reps.size() && quotient[x] < 0; ++c) {
      auto pr = projection(sig, in, {reps[c], x});
      if (std::all_of(pr.rows.begin(), pr.rows.end(), [](const Type& t) { return t.cls[0] == t.cls[1]; }))
        quotient[x] = static_cast<int>(c);
    }
    if (quotient[x] < 0) {
      quotient[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  const int m = static_cast<int>(reps.size());
  LabeledStructure x(m, k);
  const auto& subs = subsets_of(m, k);
  for (std::size_t r = 0; r < subs.size(); ++r) {
    std::vector<int> t;
    for (int c : subs[r]) t.push_back(reps[c]);
    auto pr = projection(sig, in, t);
    if (pr.size() != 1) throw PreconditionError("extract_solution: projection is not a single row");
    if (!pr.rows[0].injective()) throw std::logic_error("extract_solution: representatives collapse");
    x.set_rank(r, pr.rows[0].quot.at_rank(0));
  }
  if (!realizable(x, g)) throw std::logic_error("extract_solution: quotient structure contains a bound");
  return Certificate{std::move(x), std::move(quotient)};
}

enum class VerdictKind { Sat, Unsat, HardWitness };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Sat: return "sat";
    case VerdictKind::Unsat: return "unsat";
    case VerdictKind::HardWitness: return "hard-witness";
  }
  return "?";
}

struct TraceEvent {
  int iteration = 0;
  std::string stage;  // "saturate", "injectivize", "sink", "rejected-sink", "branch", "done"
  std::vector<int> tuple;
  std::vector<Type> F;
  /// row counts of every injective k-subset projection after the step
  std::vector<std::pair<std::vector<int>, std::size_t>> projections;
  std::string note;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unsat;
  std::optional<Certificate> certificate;
  std::vector<std::string> unsat_log;
  std::vector<ImplArc> cycle;
  Instance final_instance;  // the last injective instance, for cycle display
  int iterations = 0;
  bool used_branching = false;
};

struct SolveOptions {
  int depth = 3;
  std::function<void(const TraceEvent&)> trace;
};

namespace detail {

inline std::vector<std::pair<std::vector<int>, std::size_t>> projection_sizes(const Signature& sig,
                                                                               const Instance& in, int k) {
  std::vector<std::pair<std::vector<int>, std::size_t>> out;
  if (in.var_count() < k) return out;
  for (const auto& a : subsets_lex(in.var_count(), k)) out.emplace_back(a, projection(sig, in, a).size());
  return out;
}

inline Instance restrict_tuple(const Signature& sig, Instance in, const std::vector<int>& a,
                               const std::vector<Type>& f) {
  for (auto& c : in.constraints) {
    if (!covers(c.vars, a)) continue;
    auto pos = positions_of(c, a);
    std::erase_if(c.rows, [&](const Type& t) {
      return !std::binary_search(f.begin(), f.end(), restrict_type(sig, t, pos));
    });
  }
  return in;
}

/// Complete case split on k-subset projections; every branch saturated.
inline std::optional<Certificate> branch_solve(const Instance& in, const MinimalityParams& p,
                                               const GroundStructure& g) {
  Instance s = saturate(in, p, g);
  if (s.trivial()) return std::nullopt;
  const Signature& sig = g.sig();
  if (s.var_count() >= g.k())
    for (const auto& a : subsets_lex(s.var_count(), g.k())) {
      auto pr = projection(sig, s, a);
      if (pr.size() < 2) continue;
      for (const auto& row : pr.rows) {
        auto sub = branch_solve(restrict_tuple(sig, s, a, {row}), p, g);
        if (sub) return sub;
      }
      return std::nullopt;
    }
  return extract_solution(s, g);
}

inline Certificate lift(const Certificate& inner, const std::vector<int>& quotient) {
  Certificate out{inner.structure, {}};
  for (int q : quotient) out.quotient.push_back(inner.quotient[q]);
  return out;
}

}  // namespace detail

/// Sat with a verified certificate, Unsat (refuted by saturation), or a cycle
/// of implications when no sink restriction keeps the other projections.
/// When no sink works and the injectivized input has no cycle within `depth`,
/// a complete case split decides the instance instead.
inline Verdict solve(const Instance& input, const GroundStructure& g, const SolveOptions& opt = {}) {
  const Signature& sig = g.sig();
  const int k = g.k();
  const auto p = solver_params(g);
  Verdict verdict;
  auto emit = [&](TraceEvent e) {
    if (opt.trace) opt.trace(e);
  };
  SaturateOptions so;
  so.log = &verdict.unsat_log;

  Instance cur = saturate(input, p, g, so);
  if (cur.trivial()) {
    verdict.kind = VerdictKind::Unsat;
    emit({0, "saturate", {}, {}, {}, "trivial"});
    return verdict;
  }
  auto inj = injectivize(cur, g);
  cur = saturate(inj.instance, p, g, so);
  if (cur.trivial()) {
    verdict.kind = VerdictKind::Unsat;
    emit({0, "injectivize", {}, {}, {}, "trivial after injectivization"});
    return verdict;
  }
  emit({0, "injectivize", {}, {}, detail::projection_sizes(sig, cur, k),
        std::to_string(input.var_count() - cur.var_count()) + " merges"});
  const Instance initial = cur;

  auto finish = [&](const Certificate& inner) {
    Certificate cert = detail::lift(inner, inj.quotient);
    if (!verify_certificate(input, g, cert)) throw std::logic_error("solve: certificate failed verification");
    verdict.kind = VerdictKind::Sat;
    verdict.certificate = std::move(cert);
    verdict.final_instance = cur;
    return verdict;
  };

  for (int iteration = 1;; ++iteration) {
    verdict.iterations = iteration;
    bool single = true;
    if (cur.var_count() >= k)
      for (const auto& a : subsets_lex(cur.var_count(), k))
        if (projection(sig, cur, a).size() > 1) {
          single = false;
          break;
        }
    if (single) {
      emit({iteration, "done", {}, {}, {}, "every projection is a single orbit"});
      return finish(extract_solution(cur, g));
    }

    auto graph = build_instance_impl_graph(cur, g, 1);
    auto outdeg = graph.out_degree();
    std::vector<int> sinks;
    for (int i = 0; i < static_cast<int>(graph.vertices.size()); ++i)
      if (outdeg[i] == 0) sinks.push_back(i);
    std::stable_sort(sinks.begin(), sinks.end(), [&](int a, int b) {
      return (graph.vertices[a].F.size() == 1) > (graph.vertices[b].F.size() == 1);
    });

    bool advanced = false;
    for (int s : sinks) {
      const auto& vx = graph.vertices[s];
      Instance next = saturate(detail::restrict_tuple(sig, cur, vx.tuple, vx.F), p, g);
      std::string why;
      if (next.trivial()) {
        why = "restriction refuted by saturation";
      } else {
        for (const auto& [a, rel] : graph.projections) {
          auto now = projection(sig, next, a);
          bool expect_f = a == vx.tuple;
          if (expect_f ? now.rows != vx.F : now.rows != rel.rows) {
            why = "projection changed on another tuple";
            break;
          }
        }
      }
      if (!why.empty()) {
        emit({iteration, "rejected-sink", vx.tuple, vx.F, {}, why});
        continue;
      }
      cur = std::move(next);
      emit({iteration, "sink", vx.tuple, vx.F, detail::projection_sizes(sig, cur, k), ""});
      advanced = true;
      break;
    }
    if (advanced) continue;

    // Restricting to F need not be pp-definable, so only cycles of the
    // unrestricted instance count as witnesses.
    auto deep = build_instance_impl_graph(initial, g, opt.depth);
    auto cyc = find_cycle(deep);
    if (!cyc.empty()) {
      verdict.kind = VerdictKind::HardWitness;
      for (int e : cyc) verdict.cycle.push_back(deep.arcs[e]);
      verdict.final_instance = initial;
      emit({iteration, "hard-witness", {}, {}, {}, std::to_string(cyc.size()) + " arcs"});
      return verdict;
    }
    verdict.used_branching = true;
    emit({iteration, "branch", {}, {}, {}, "no usable sink and no cycle within depth"});
    auto sol = detail::branch_solve(cur, p, g);
    if (!sol) {
      verdict.kind = VerdictKind::Unsat;
      verdict.unsat_log.push_back("every branch of the case split was refuted by saturation");
      return verdict;
    }
    return finish(*sol);
  }
}

}  // namespace orbitcsp
