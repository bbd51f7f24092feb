#pragma once

// Height-1 identity chains on finite operation tables.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbitcsp/error.hpp"

namespace orbitcsp {

/// Ternary operation on [n]; value of (x,y,z) at index (x*n + y)*n + z.
struct OpTable {
  int n = 0;
  std::vector<int> table;

  OpTable() = default;
  OpTable(int size, std::vector<int> t) : n(size), table(std::move(t)) {
    if (n < 1) throw InputError("operation domain must be nonempty");
    if (table.size() != static_cast<std::size_t>(n) * n * n) throw InputError("operation table must have n^3 entries");
    for (int v : table)
      if (v < 0 || v >= n) throw InputError("operation value outside the domain");
  }

  [[nodiscard]] int operator()(int x, int y, int z) const { return table[(x * n + y) * n + z]; }

  template <typename F>
  static OpTable from(int n, F&& f) {
    std::vector<int> t;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) t.push_back(f(x, y, z));
    return OpTable(n, std::move(t));
  }

  friend bool operator==(const OpTable&, const OpTable&) = default;
};

enum class ChainKind { Pixley, DirectedJonsson, Jonsson };

inline const char* to_string(ChainKind k) {
  switch (k) {
    case ChainKind::Pixley: return "pixley";
    case ChainKind::DirectedJonsson: return "directed-jonsson";
    case ChainKind::Jonsson: return "jonsson";
  }
  return "?";
}

inline std::optional<ChainKind> chain_kind_from(const std::string& s) {
  if (s == "pixley") return ChainKind::Pixley;
  if (s == "directed-jonsson") return ChainKind::DirectedJonsson;
  if (s == "jonsson") return ChainKind::Jonsson;
  return std::nullopt;
}

struct OpChain {
  std::vector<OpTable> ops;
  ChainKind kind = ChainKind::Jonsson;
};

/// First failing identity: equation number as listed for the kind (1-based),
/// the 1-based operation index i it was instantiated at, and the witness (x,y).
struct ChainCheck {
  bool ok = true;
  int equation = 0;
  int index = 0;
  int x = 0;
  int y = 0;
  explicit operator bool() const { return ok; }
};

namespace detail {

// One identity instance lhs(x,y) = rhs(x,y), checked over all pairs.
template <typename L, typename R>
bool holds(int n, L&& lhs, R&& rhs, ChainCheck& fail, int eq, int idx) {
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (lhs(x, y) != rhs(x, y)) {
        fail = {false, eq, idx, x, y};
        return false;
      }
  return true;
}

/// Identities of the chain whose operations all have index < `known`
/// (0-based); used to prune enumeration. `known` = ops.size() checks all.
inline ChainCheck check_prefix(const std::vector<OpTable>& ops, ChainKind kind, std::size_t total, std::size_t known) {
  ChainCheck fail;
  const int n = ops.at(0).n;
  const int m = static_cast<int>(total);
  auto op = [&](int i) -> const OpTable& { return ops[i - 1]; };  // 1-based
  auto avail = [&](int i) { return i >= 1 && static_cast<std::size_t>(i) <= known; };
  switch (kind) {
    case ChainKind::Pixley:
      if (avail(1) && !holds(n, [&](int x, int y) { return op(1)(x, y, y); }, [&](int x, int) { return op(1)(x, x, x); }, fail, 1, 1))
        return fail;
      for (int i = 1; i <= m; ++i)
        if (avail(i) && !holds(n, [&](int x, int y) { return op(i)(x, y, x); }, [&](int x, int) { return op(i)(x, x, x); }, fail, 2, i))
          return fail;
      for (int i = 1; i <= m - 1; ++i)
        if (avail(i + 1) && !holds(n, [&](int x, int y) { return op(i)(x, x, y); }, [&](int x, int y) { return op(i + 1)(x, y, y); }, fail, 3, i))
          return fail;
      if (avail(m) && !holds(n, [&](int x, int y) { return op(m)(x, x, y); }, [&](int, int y) { return op(m)(y, y, y); }, fail, 4, m))
        return fail;
      break;
    case ChainKind::DirectedJonsson:
      if (avail(1) && !holds(n, [&](int x, int y) { return op(1)(x, x, y); }, [&](int x, int) { return op(1)(x, x, x); }, fail, 1, 1))
        return fail;
      for (int i = 1; i <= m; ++i)
        if (avail(i) && !holds(n, [&](int x, int y) { return op(i)(x, y, x); }, [&](int x, int) { return op(i)(x, x, x); }, fail, 2, i))
          return fail;
      for (int i = 1; i <= m - 1; ++i)
        if (avail(i + 1) && !holds(n, [&](int x, int y) { return op(i)(x, y, y); }, [&](int x, int y) { return op(i + 1)(x, x, y); }, fail, 3, i))
          return fail;
      if (avail(m) && !holds(n, [&](int x, int y) { return op(m)(x, y, y); }, [&](int, int y) { return op(m)(y, y, y); }, fail, 4, m))
        return fail;
      break;
    case ChainKind::Jonsson: {
      const int h = (m - 1) / 2;
      if (avail(1) && !holds(n, [&](int x, int y) { return op(1)(x, x, y); }, [&](int x, int) { return op(1)(x, x, x); }, fail, 1, 1))
        return fail;
      for (int i = 1; i <= m; ++i)
        if (avail(i) && !holds(n, [&](int x, int y) { return op(i)(x, y, x); }, [&](int x, int) { return op(i)(x, x, x); }, fail, 2, i))
          return fail;
      for (int i = 1; i <= h; ++i)
        if (avail(2 * i) && !holds(n, [&](int x, int y) { return op(2 * i - 1)(x, y, y); }, [&](int x, int y) { return op(2 * i)(x, y, y); }, fail, 3, i))
          return fail;
      for (int i = 1; i <= h; ++i)
        if (avail(2 * i + 1) && !holds(n, [&](int x, int y) { return op(2 * i)(x, x, y); }, [&](int x, int y) { return op(2 * i + 1)(x, x, y); }, fail, 4, i))
          return fail;
      if (avail(m) && !holds(n, [&](int x, int y) { return op(m)(x, y, y); }, [&](int, int y) { return op(m)(y, y, y); }, fail, 5, m))
        return fail;
      break;
    }
  }
  return fail;
}

}  // namespace detail

/// Exhaustive check of the identities of `c.kind`. Jónsson chains have odd
/// length 2h+1; their middle identities are checked for i in 1..h. The Pixley
/// and directed chains link neighbours i, i+1 for i in 1..m-1.
inline ChainCheck verify_chain(const OpChain& c) {
  if (c.ops.empty()) throw InputError("chain must contain at least one operation");
  for (const auto& op : c.ops)
    if (op.n != c.ops[0].n) throw InputError("chain operations must share a domain");
  if (c.kind == ChainKind::Jonsson && c.ops.size() % 2 == 0) throw InputError("Jonsson chain must have odd length");
  return detail::check_prefix(c.ops, c.kind, c.ops.size(), c.ops.size());
}

/// f applied coordinatewise to any three tuples of r stays in r.
inline bool preserves(const OpTable& f, const std::vector<std::vector<int>>& r) {
  if (r.empty()) return true;
  const std::size_t m = r[0].size();
  for (const auto& t : r) {
    if (t.size() != m) throw InputError("relation tuples have different arities");
    for (int v : t)
      if (v < 0 || v >= f.n) throw InputError("relation value outside the operation domain");
  }
  std::set<std::vector<int>> rel(r.begin(), r.end());
  std::vector<int> img(m);
  for (const auto& a : r)
    for (const auto& b : r)
      for (const auto& c : r) {
        for (std::size_t i = 0; i < m; ++i) img[i] = f(a[i], b[i], c[i]);
        if (!rel.count(img)) return false;
      }
  return true;
}

struct IdempotentizeResult {
  OpChain chain;
  std::vector<int> failed;  // 1-based operation indices without a matching bijection
  [[nodiscard]] bool ok() const { return failed.empty(); }
};

/// Replaces each J_i by alpha^-1 ∘ J_i where alpha is the first pool bijection
/// agreeing with x -> J_i(x,x,x) on `subset`.
inline IdempotentizeResult idempotentize(const OpChain& c, const std::vector<int>& subset,
                                         const std::vector<std::vector<int>>& pool) {
  if (c.ops.empty()) throw InputError("chain must contain at least one operation");
  const int n = c.ops[0].n;
  for (const auto& a : pool) {
    std::vector<int> s = a;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
      if (static_cast<int>(s.size()) != n || s[i] != i) throw PreconditionError("pool element is not a bijection");
  }
  for (int b : subset)
    if (b < 0 || b >= n) throw InputError("subset element outside the domain");
  IdempotentizeResult out{c, {}};
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    const std::vector<int>* alpha = nullptr;
    for (const auto& a : pool)
      if (std::all_of(subset.begin(), subset.end(), [&](int b) { return a[b] == op(b, b, b); })) {
        alpha = &a;
        break;
      }
    if (!alpha) {
      out.failed.push_back(static_cast<int>(i) + 1);
      continue;
    }
    std::vector<int> inv(n);
    for (int x = 0; x < n; ++x) inv[(*alpha)[x]] = x;
    out.chain.ops[i] = OpTable::from(n, [&](int x, int y, int z) { return inv[op(x, y, z)]; });
  }
  return out;
}

struct ChainEnumeration {
  std::uint64_t count = 0;
  std::vector<OpChain> samples;
};

/// Counts all chains of the given kind and length over [n]; identities are
/// checked as soon as their operations are fixed.
inline ChainEnumeration enumerate_chains(int n, int length, ChainKind kind, std::size_t max_samples = 4) {
  if (n < 1 || length < 1) throw InputError("enumerate_chains: need n >= 1 and length >= 1");
  if (kind == ChainKind::Jonsson && length % 2 == 0) throw InputError("Jonsson chain must have odd length");
  const int cells = n * n * n;
  double tables = 1;
  for (int i = 0; i < cells; ++i) tables *= n;
  constexpr double kBudget = 1 << 24;
  if (tables > kBudget) throw BudgetError("enumerate_chains: too many operation tables");
  const auto per_op = static_cast<std::uint64_t>(tables);
  std::vector<OpTable> all;
  all.reserve(per_op);
  for (std::uint64_t code = 0; code < per_op; ++code) {
    std::vector<int> t(cells);
    std::uint64_t c = code;
    for (int i = 0; i < cells; ++i) {
      t[i] = static_cast<int>(c % n);
      c /= n;
    }
    all.emplace_back(n, std::move(t));
  }
  ChainEnumeration out;
  std::vector<OpTable> chain;
  std::uint64_t visited = 0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == length) {
      ++out.count;
      if (out.samples.size() < max_samples) out.samples.push_back(OpChain{chain, kind});
      return;
    }
    for (const auto& op : all) {
      if (++visited > static_cast<std::uint64_t>(kBudget) * 4) throw BudgetError("enumerate_chains: search budget exceeded");
      chain.push_back(op);
      if (detail::check_prefix(chain, kind, length, chain.size())) self(self, pos + 1);
      chain.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace orbitcsp
