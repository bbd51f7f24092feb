#pragma once

// Finite presentations of ground structures: a signature of orbit labels on
// injective k-tuples with a permutation action, finite labeled structures over
// it, and the embedding / homomorphism tests against the forbidden bounds.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"

namespace orbitcsp {

using Label = std::uint8_t;
inline constexpr Label kUnset = 0xFF;

/// Orbit labels of injective k-tuples together with the action of the
/// symmetric group on tuple positions.
///
/// Convention: if a tuple t carries label l, then the reindexed tuple
/// (t[p[0]], ..., t[p[k-1]]) carries act(p, l). A valid action therefore
/// satisfies act(id, l) == l and act(p∘q, l) == act(q, act(p, l)) where
/// (p∘q)[i] = p[q[i]].
class Signature {
 public:
  struct ActionEntry {
    std::vector<int> perm;
    Label in;
    Label out;
  };

  Signature() = default;

  /// Unlisted (perm, label) pairs default to the label itself.
  Signature(int k, std::vector<std::string> names, const std::vector<ActionEntry>& action = {})
      : k_(k), names_(std::move(names)) {
    if (k_ < 2 || k_ > kMaxArity) throw InputError("signature arity must be in [2, 6]");
    if (names_.empty() || names_.size() >= kUnset) throw InputError("signature needs 1..254 labels");
    std::set<std::string> distinct(names_.begin(), names_.end());
    if (distinct.size() != names_.size()) throw InputError("duplicate label name in signature");
    const auto& perms = permutations_of(k_);
    action_.resize(perms.size() * names_.size());
    for (std::size_t p = 0; p < perms.size(); ++p)
      for (std::size_t l = 0; l < names_.size(); ++l) action_[p * names_.size() + l] = static_cast<Label>(l);
    for (const auto& e : action) {
      if (static_cast<int>(e.perm.size()) != k_) throw InputError("action permutation has wrong length");
      std::vector<int> sorted = e.perm;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < k_; ++i)
        if (sorted[i] != i) throw InputError("action entry is not a permutation");
      if (e.in >= names_.size() || e.out >= names_.size()) throw InputError("action label out of range");
      action_[permutation_rank(e.perm) * names_.size() + e.in] = e.out;
    }
  }

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int label_count() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::string& name(Label l) const { return names_.at(l); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  [[nodiscard]] std::optional<Label> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Label>(i);
    return std::nullopt;
  }

  [[nodiscard]] Label act_rank(std::size_t perm_rank, Label l) const {
    return action_[perm_rank * names_.size() + l];
  }
  [[nodiscard]] Label act(std::span<const int> perm, Label l) const {
    return act_rank(permutation_rank(perm), l);
  }

  /// Label of the ordered injective tuple t given the label stored for sorted(t).
  template <typename T>
  [[nodiscard]] Label label_of_tuple(std::span<const T> t, Label sorted_label) const {
    if (sorted_label == kUnset) return kUnset;
    std::array<int, kMaxArity> p{};
    sorting_pattern<T>(t, std::span<int>(p.data(), t.size()));
    return act_rank(permutation_rank(std::span<const int>(p.data(), t.size())), sorted_label);
  }

  /// Label to store for sorted(t) so that t reads back as l.
  template <typename T>
  [[nodiscard]] Label sorted_label_for(std::span<const T> t, Label l) const {
    std::array<int, kMaxArity> p{};
    sorting_pattern<T>(t, std::span<int>(p.data(), t.size()));
    auto inv = inverse_permutation(std::span<const int>(p.data(), t.size()));
    return act(inv, l);
  }

  /// Exhaustive check of the action laws; empty when the action is valid.
  [[nodiscard]] std::vector<std::string> group_law_violations() const {
    std::vector<std::string> out;
    const auto& perms = permutations_of(k_);
    for (Label l = 0; l < label_count(); ++l)
      if (act_rank(0, l) != l) out.push_back("identity permutation moves label " + names_[l]);
    for (const auto& p : perms)
      for (const auto& q : perms)
        for (Label l = 0; l < label_count(); ++l) {
          auto pq = compose_permutations(p, q);
          if (act(pq, l) != act(q, act(p, l))) {
            out.push_back("action law fails for label " + names_[l] + " under " + perm_string(p) + " then " +
                          perm_string(q));
          }
        }
    return out;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  static std::string perm_string(std::span<const int> p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
  }

  int k_ = 0;
  std::vector<std::string> names_;
  std::vector<Label> action_;
};

/// Vertex set [n] with a partial labeling of its k-subsets. Labels are stored
/// for the increasing ordering of each subset, indexed by colex rank.
class LabeledStructure {
 public:
  LabeledStructure() = default;
  LabeledStructure(int n, int k) : n_(n), k_(k), labels_(binomial(n, k), kUnset) {
    if (n < 0 || n > kMaxPoints) throw InputError("structure size out of range");
  }
  LabeledStructure(int n, int k, std::vector<Label> labels) : n_(n), k_(k), labels_(std::move(labels)) {
    if (labels_.size() != binomial(n, k)) throw InputError("label vector has wrong length");
  }

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] int arity() const { return k_; }
  [[nodiscard]] std::span<const Label> labels() const { return labels_; }
  [[nodiscard]] Label at_rank(std::size_t r) const { return labels_[r]; }
  void set_rank(std::size_t r, Label l) { labels_[r] = l; }

  [[nodiscard]] bool fully_labeled() const {
    return std::none_of(labels_.begin(), labels_.end(), [](Label l) { return l == kUnset; });
  }

  /// Label of an ordered injective tuple of vertices, kUnset when undefined.
  [[nodiscard]] Label get(const Signature& sig, std::span<const int> tuple) const {
    std::array<int, kMaxArity> s{};
    std::copy(tuple.begin(), tuple.end(), s.begin());
    std::sort(s.begin(), s.begin() + tuple.size());
    return sig.label_of_tuple<int>(tuple, labels_[subset_rank(std::span<const int>(s.data(), tuple.size()))]);
  }

  void set(const Signature& sig, std::span<const int> tuple, Label l) {
    std::array<int, kMaxArity> s{};
    std::copy(tuple.begin(), tuple.end(), s.begin());
    std::sort(s.begin(), s.begin() + tuple.size());
    for (std::size_t i = 1; i < tuple.size(); ++i)
      if (s[i] == s[i - 1]) throw InputError("labeled tuple must be injective");
    for (std::size_t i = 0; i < tuple.size(); ++i)
      if (s[i] < 0 || s[i] >= n_) throw InputError("labeled tuple vertex out of range");
    labels_[subset_rank(std::span<const int>(s.data(), tuple.size()))] = sig.sorted_label_for<int>(tuple, l);
  }

  /// Induced substructure on the listed vertices, renumbered in list order.
  [[nodiscard]] LabeledStructure induced(const Signature& sig, std::span<const int> vertices) const {
    const int m = static_cast<int>(vertices.size());
    LabeledStructure out(m, k_);
    std::array<int, kMaxArity> img{};
    const auto& subs = subsets_of(m, k_);
    for (std::size_t r = 0; r < subs.size(); ++r) {
      for (int i = 0; i < k_; ++i) img[i] = vertices[subs[r][i]];
      out.labels_[r] = get(sig, std::span<const int>(img.data(), k_));
    }
    return out;
  }

  /// Copy with one extra unlabeled vertex appended.
  [[nodiscard]] LabeledStructure grown(int extra = 1) const {
    LabeledStructure out(n_ + extra, k_);
    std::copy(labels_.begin(), labels_.end(), out.labels_.begin());
    return out;
  }

  friend auto operator<=>(const LabeledStructure&, const LabeledStructure&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Label> labels_;
};

/// A raw finite structure in the orbit signature: arbitrary (possibly
/// non-injective) k-tuples with any number of labels. Used for homomorphism
/// bounds, where repeated vertices and doubly labeled tuples must be expressible.
struct Fact {
  std::vector<int> tuple;
  Label label = 0;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct Pattern {
  int n = 0;
  std::vector<Fact> facts;

  /// All orderings of every labeled subset, each with its action-derived label.
  static Pattern from(const Signature& sig, const LabeledStructure& x) {
    Pattern out{x.size(), {}};
    const auto& subs = subsets_of(x.size(), x.arity());
    for (std::size_t r = 0; r < subs.size(); ++r) {
      if (x.at_rank(r) == kUnset) continue;
      for (const auto& p : permutations_of(x.arity())) {
        Fact f{std::vector<int>(x.arity()), 0};
        for (int i = 0; i < x.arity(); ++i) f.tuple[i] = subs[r][p[i]];
        f.label = sig.act(p, x.at_rank(r));
        out.facts.push_back(std::move(f));
      }
    }
    return out;
  }

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

namespace detail {

inline void check_same_arity(const Signature& sig, const LabeledStructure& a, const LabeledStructure& b) {
  if (a.arity() != sig.k() || b.arity() != sig.k()) throw InputError("structure arity does not match signature");
  for (auto l : a.labels())
    if (l != kUnset && l >= sig.label_count()) throw InputError("label id outside signature");
  for (auto l : b.labels())
    if (l != kUnset && l >= sig.label_count()) throw InputError("label id outside signature");
}

/// Injective maps F -> X under which every defined label of F is matched by the
/// same, defined label of X. With must_hit >= 0 only maps whose image contains
/// that vertex of X count.
inline bool embedding_exists(const Signature& sig, const LabeledStructure& f, const LabeledStructure& x,
                             int must_hit = -1) {
  const int nf = f.size();
  const int nx = x.size();
  const int k = sig.k();
  if (nf > nx) return false;
  if (nf == 0) return must_hit < 0;
  // labeled subsets of F grouped by their largest vertex
  std::vector<std::vector<std::size_t>> by_max(nf);
  const auto& subs = subsets_of(nf, k);
  for (std::size_t r = 0; r < subs.size(); ++r)
    if (f.at_rank(r) != kUnset) by_max[subs[r][k - 1]].push_back(r);
  std::array<int, kMaxPoints> h{};
  std::array<bool, kMaxPoints> used{};
  std::array<int, kMaxArity> img{};
  auto rec = [&](auto&& self, int j, bool hit) -> bool {
    if (j == nf) return hit || must_hit < 0;
    if (!hit && must_hit >= 0 && nf - j == 1) {
      // last chance to hit
      if (used[must_hit]) return false;
    }
    for (int v = 0; v < nx; ++v) {
      if (used[v]) continue;
      h[j] = v;
      bool ok = true;
      for (auto r : by_max[j]) {
        for (int i = 0; i < k; ++i) img[i] = h[subs[r][i]];
        if (x.get(sig, std::span<const int>(img.data(), k)) != f.at_rank(r)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[v] = true;
      bool found = self(self, j + 1, hit || v == must_hit);
      used[v] = false;
      if (found) return true;
    }
    return false;
  };
  return rec(rec, 0, false);
}

}  // namespace detail

/// True iff an injective vertex map F -> X matches every defined label of F.
inline bool embeds(const Signature& sig, const LabeledStructure& f, const LabeledStructure& x) {
  detail::check_same_arity(sig, f, x);
  return detail::embedding_exists(sig, f, x);
}

/// True iff some vertex map sends every fact of F to a fact of X.
inline bool maps_hom(const Signature& sig, const Pattern& f, const Pattern& x) {
  for (const auto* p : {&f, &x})
    for (const auto& fact : p->facts) {
      if (static_cast<int>(fact.tuple.size()) != sig.k()) throw InputError("fact arity does not match signature");
      if (fact.label >= sig.label_count()) throw InputError("fact label outside signature");
      for (int v : fact.tuple)
        if (v < 0 || v >= p->n) throw InputError("fact vertex out of range");
    }
  if (f.n == 0) return true;
  if (x.n == 0) return false;
  std::set<Fact> target(x.facts.begin(), x.facts.end());
  std::vector<std::vector<const Fact*>> by_max(f.n);
  for (const auto& fact : f.facts) by_max[*std::max_element(fact.tuple.begin(), fact.tuple.end())].push_back(&fact);
  std::vector<int> h(f.n);
  Fact probe{std::vector<int>(sig.k()), 0};
  auto rec = [&](auto&& self, int j) -> bool {
    if (j == f.n) return true;
    for (int v = 0; v < x.n; ++v) {
      h[j] = v;
      bool ok = true;
      for (const Fact* fact : by_max[j]) {
        for (int i = 0; i < sig.k(); ++i) probe.tuple[i] = h[fact->tuple[i]];
        probe.label = fact->label;
        if (!target.count(probe)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, j + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

inline bool maps_hom(const Signature& sig, const LabeledStructure& f, const LabeledStructure& x) {
  detail::check_same_arity(sig, f, x);
  return maps_hom(sig, Pattern::from(sig, f), Pattern::from(sig, x));
}

struct PresentationReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Finite presentation of a k-neoliberal structure with finite duality.
class GroundStructure {
 public:
  GroundStructure() = default;

  /// hom_bounds defaults to derive_hom_bounds(sig, embed_bounds) when empty.
  GroundStructure(std::string name, Signature sig, std::vector<LabeledStructure> embed_bounds,
                  std::vector<Pattern> hom_bounds = {})
      : name_(std::move(name)),
        sig_(std::move(sig)),
        embed_bounds_(std::move(embed_bounds)),
        hom_bounds_(std::move(hom_bounds)),
        cache_(std::make_shared<Cache>()) {
    for (const auto& f : embed_bounds_) detail::check_same_arity(sig_, f, f);
    if (hom_bounds_.empty()) hom_bounds_ = derive_hom_bounds(sig_, embed_bounds_);
    b_ = sig_.k();
    for (const auto& f : embed_bounds_) b_ = std::max(b_, f.size());
    int largest = 0;
    for (const auto& p : hom_bounds_) largest = std::max(largest, p.n);
    d_ = std::max(3, largest + 2);
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const Signature& sig() const { return sig_; }
  [[nodiscard]] int k() const { return sig_.k(); }
  [[nodiscard]] const std::vector<LabeledStructure>& embed_bounds() const { return embed_bounds_; }
  [[nodiscard]] const std::vector<Pattern>& hom_bounds() const { return hom_bounds_; }
  /// Largest embedding bound, never below k.
  [[nodiscard]] int b() const { return b_; }
  /// Duality depth: largest homomorphism bound plus two, floored at 3.
  [[nodiscard]] int d() const { return d_; }

  /// True iff no embedding bound embeds into the (possibly partial) structure,
  /// restricted to embeddings whose image contains must_hit when given.
  [[nodiscard]] bool bound_free(const LabeledStructure& x, int must_hit = -1) const {
    for (const auto& f : embed_bounds_)
      if (detail::embedding_exists(sig_, f, x, must_hit)) return false;
    return true;
  }

  /// Every fully labeled realizable structure on n vertices.
  [[nodiscard]] const std::vector<LabeledStructure>& realizable_structures(int n) const;

  /// Homomorphism bounds implied by the representation: tuples with repeated
  /// vertices, pairs of inconsistent labels on one k-set, and every orientation
  /// of each embedding bound.
  static std::vector<Pattern> derive_hom_bounds(const Signature& sig, const std::vector<LabeledStructure>& embeds) {
    std::set<Pattern> out;
    const int k = sig.k();
    for (const auto& rgs : partitions_of(k)) {
      int c = class_count(rgs);
      if (c == k) continue;
      for (Label l = 0; l < sig.label_count(); ++l)
        out.insert(Pattern{c, {Fact{std::vector<int>(rgs.begin(), rgs.end()), l}}});
    }
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    for (const auto& p : permutations_of(k))
      for (Label a = 0; a < sig.label_count(); ++a)
        for (Label b = 0; b < sig.label_count(); ++b) {
          if (sig.act(p, a) == b) continue;
          std::vector<int> tp(k);
          for (int i = 0; i < k; ++i) tp[i] = id[p[i]];
          Pattern pat{k, {Fact{id, a}, Fact{tp, b}}};
          std::sort(pat.facts.begin(), pat.facts.end());
          out.insert(pat);
        }
    for (const auto& f : embeds) {
      const auto& subs = subsets_of(f.size(), k);
      std::vector<std::size_t> labeled;
      for (std::size_t r = 0; r < subs.size(); ++r)
        if (f.at_rank(r) != kUnset) labeled.push_back(r);
      const auto& perms = permutations_of(k);
      std::vector<std::size_t> choice(labeled.size(), 0);
      while (true) {
        Pattern pat{f.size(), {}};
        for (std::size_t i = 0; i < labeled.size(); ++i) {
          const auto& p = perms[choice[i]];
          Fact fact{std::vector<int>(k), sig.act(p, f.at_rank(labeled[i]))};
          for (int j = 0; j < k; ++j) fact.tuple[j] = subs[labeled[i]][p[j]];
          pat.facts.push_back(std::move(fact));
        }
        std::sort(pat.facts.begin(), pat.facts.end());
        out.insert(std::move(pat));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == perms.size()) choice[i++] = 0;
        if (i == choice.size()) break;
      }
    }
    return {out.begin(), out.end()};
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::vector<LabeledStructure>> by_size;
  };

  std::string name_;
  Signature sig_;
  std::vector<LabeledStructure> embed_bounds_;
  std::vector<Pattern> hom_bounds_;
  int b_ = 2;
  int d_ = 3;
  std::shared_ptr<Cache> cache_;
};

/// Depth-first assignment of labels to the unset k-subsets listed in `ranks`
/// (in that order), pruning any partial labeling into which an embedding bound
/// already embeds. `visit` sees every bound-free completion and returns false
/// to stop the search. The caller is responsible for the labels already set.
template <typename Visit>
bool for_each_completion(const GroundStructure& g, LabeledStructure& x, std::span<const std::size_t> ranks,
                         Visit&& visit) {
  const int k = g.k();
  const auto& subs = subsets_of(x.size(), k);
  const bool has_bounds = !g.embed_bounds().empty();
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == ranks.size()) return visit(static_cast<const LabeledStructure&>(x));
    const std::size_t r = ranks[i];
    for (Label l = 0; l < g.sig().label_count(); ++l) {
      x.set_rank(r, l);
      if (has_bounds && !g.bound_free(x, subs[r][k - 1])) continue;
      if (!self(self, i + 1)) {
        x.set_rank(r, kUnset);
        return false;
      }
    }
    x.set_rank(r, kUnset);
    return true;
  };
  return rec(rec, 0);
}

/// True iff no embedding bound embeds into the fully labeled structure.
inline bool realizable(const LabeledStructure& x, const GroundStructure& g) {
  if (x.arity() != g.k()) throw InputError("structure arity does not match signature");
  if (!x.fully_labeled()) throw PreconditionError("realizable: structure is not fully labeled");
  return g.bound_free(x);
}

/// All realizable full labelings of X plus one fresh vertex.
inline std::vector<LabeledStructure> one_point_extensions(const LabeledStructure& x, const GroundStructure& g) {
  auto y = x.grown();
  const int n = x.size();
  std::vector<std::size_t> ranks;
  for (std::size_t r = binomial(n, g.k()); r < binomial(n + 1, g.k()); ++r) ranks.push_back(r);
  std::vector<LabeledStructure> out;
  if (ranks.empty() && !g.bound_free(y)) return out;
  for_each_completion(g, y, ranks, [&](const LabeledStructure& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

inline const std::vector<LabeledStructure>& GroundStructure::realizable_structures(int n) const {
  constexpr std::size_t kLimit = 2'000'000;
  std::lock_guard lock(cache_->mutex);
  auto& by = cache_->by_size;
  if (by.empty()) by.push_back({LabeledStructure(0, k())});
  while (static_cast<int>(by.size()) <= n) {
    std::vector<LabeledStructure> next;
    for (const auto& x : by.back()) {
      auto ext = one_point_extensions(x, *this);
      next.insert(next.end(), std::make_move_iterator(ext.begin()), std::make_move_iterator(ext.end()));
      if (next.size() > kLimit) throw BudgetError("too many realizable structures to enumerate");
    }
    by.push_back(std::move(next));
  }
  return by[n];
}

/// Bounded-depth sanity checks of the defining properties of a presentation:
/// group action laws, every label realized, one-point extensions of every
/// realizable structure below `depth`, and two distinct realizations of every
/// one-point type over at most k-1 points.
inline PresentationReport validate_presentation(const GroundStructure& g, int depth) {
  if (depth < g.k()) throw PreconditionError("validate_presentation: depth must be at least k");
  PresentationReport report;
  report.violations = g.sig().group_law_violations();
  if (!report.ok()) return report;  // labels are not well defined beyond this point

  const int k = g.k();
  std::vector<bool> seen(g.sig().label_count(), false);
  for (const auto& x : g.realizable_structures(k)) seen[x.at_rank(0)] = true;
  for (Label l = 0; l < g.sig().label_count(); ++l)
    if (!seen[l]) report.violations.push_back("label " + g.sig().name(l) + " is not realized by any k-set");

  for (int n = 0; n < depth; ++n) {
    for (const auto& x : g.realizable_structures(n)) {
      auto ext = one_point_extensions(x, g);
      if (ext.empty()) {
        report.violations.push_back("realizable structure of size " + std::to_string(n) +
                                    " has no one-point extension");
        break;
      }
      if (n > k - 1) continue;
      for (const auto& e : ext) {
        // two fresh points n, n+1 of the same type over x
        auto y = e.grown();
        const auto& subs = subsets_of(n + 2, k);
        std::vector<std::size_t> free;
        for (std::size_t r = binomial(n + 1, k); r < subs.size(); ++r) {
          const auto& s = subs[r];
          bool has_n = std::find(s.begin(), s.end(), n) != s.end();
          if (has_n) {
            free.push_back(r);
            continue;
          }
          // copy the label of the same subset with n+1 replaced by n
          std::vector<int> t(s.begin(), s.end());
          for (auto& v : t)
            if (v == n + 1) v = n;
          y.set(g.sig(), t, e.get(g.sig(), t));
        }
        bool twin = false;
        if (g.bound_free(y))
          twin = !for_each_completion(g, y, free, [](const LabeledStructure&) { return false; });
        if (!twin) {
          report.violations.push_back("one-point type over " + std::to_string(n) +
                                      " points has a single realization (algebraicity)");
          break;
        }
      }
    }
  }
  return report;
}

namespace builtin {

inline GroundStructure random_graph() {
  return GroundStructure("random-graph", Signature(2, {"E", "N"}), {});
}

inline GroundStructure henson_k3_free() {
  Signature sig(2, {"E", "N"});
  LabeledStructure k3(3, 2, {0, 0, 0});
  return GroundStructure("henson-k3-free", sig, {k3});
}

inline GroundStructure hypergraph3() {
  return GroundStructure("hypergraph-3", Signature(3, {"H", "N"}), {});
}

inline std::optional<GroundStructure> by_name(std::string_view name) {
  if (name == "random-graph") return random_graph();
  if (name == "henson-k3-free") return henson_k3_free();
  if (name == "hypergraph-3") return hypergraph3();
  return std::nullopt;
}

inline std::vector<std::string> names() { return {"random-graph", "henson-k3-free", "hypergraph-3"}; }

}  // namespace builtin

}  // namespace orbitcsp
