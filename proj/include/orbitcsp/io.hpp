#pragma once

// JSON formats for structures, relations, instances, certificates and
// operation tables.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orbitcsp/error.hpp"
#include "orbitcsp/identities.hpp"
#include "orbitcsp/minimality.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/solver.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp::io {

using json = nlohmann::json;

inline constexpr const char* kStructureSchema = "orbitcsp.structure/1";
inline constexpr const char* kInstanceSchema = "orbitcsp.instance/1";
inline constexpr const char* kRelationSchema = "orbitcsp.relation/1";
inline constexpr const char* kOpTableSchema = "orbitcsp.optable/1";
inline constexpr const char* kResultSchema = "orbitcsp.result/1";

inline json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string tuple_key(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

inline std::vector<int> parse_tuple_key(const std::string& key) {
  std::vector<int> out;
  std::string body = key;
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') throw InputError("bad tuple key " + key);
  std::stringstream ss(body.substr(1, body.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("bad tuple key " + key);
    }
  }
  return out;
}

inline Label label_from_json(const Signature& sig, const json& j) {
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v < 0 || v >= sig.label_count()) throw InputError("label index out of range");
    return static_cast<Label>(v);
  }
  if (!j.is_string()) throw InputError("label must be a name or an index");
  auto l = sig.find(j.get<std::string>());
  if (!l) throw InputError("unknown label " + j.get<std::string>());
  return *l;
}

template <typename F>
decltype(auto) guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// structures

inline GroundStructure structure_from_json(const json& j) {
  return guarded([&] {
    const int k = j.at("k").get<int>();
    auto names = j.at("labels").get<std::vector<std::string>>();
    std::vector<Signature::ActionEntry> action;
    Signature plain(k, names);
    if (j.contains("action"))
      for (const auto& e : j.at("action")) {
        if (!e.is_array() || e.size() != 3) throw InputError("action entries are [perm, in, out]");
        action.push_back({e[0].get<std::vector<int>>(), label_from_json(plain, e[1]), label_from_json(plain, e[2])});
      }
    Signature sig(k, names, action);
    std::vector<LabeledStructure> embeds;
    if (j.contains("embed_bounds"))
      for (const auto& b : j.at("embed_bounds")) {
        LabeledStructure x(b.at("n").get<int>(), k);
        for (const auto& f : b.at("labels")) {
          auto t = f.at(0).get<std::vector<int>>();
          if (static_cast<int>(t.size()) != k) throw InputError("bound tuple has wrong arity");
          Label l = label_from_json(sig, f.at(1));
          Label have = kUnset;
          {
            std::vector<int> s = t;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("embed bound tuple must be injective");
            for (int v : s)
              if (v < 0 || v >= x.size()) throw InputError("bound vertex out of range");
            have = x.get(sig, t);
          }
          if (have != kUnset && have != l) throw InputError("embed bound labels one k-set inconsistently");
          x.set(sig, t, l);
        }
        embeds.push_back(std::move(x));
      }
    std::vector<Pattern> homs;
    if (j.contains("hom_bounds"))
      for (const auto& b : j.at("hom_bounds")) {
        Pattern p{b.at("n").get<int>(), {}};
        for (const auto& f : b.at("facts")) {
          Fact fact{f.at(0).get<std::vector<int>>(), label_from_json(sig, f.at(1))};
          if (static_cast<int>(fact.tuple.size()) != k) throw InputError("fact has wrong arity");
          for (int v : fact.tuple)
            if (v < 0 || v >= p.n) throw InputError("fact vertex out of range");
          p.facts.push_back(std::move(fact));
        }
        homs.push_back(std::move(p));
      }
    return GroundStructure(j.value("name", std::string("inline")), sig, embeds, homs);
  });
}

inline json structure_to_json(const GroundStructure& g) {
  const auto& sig = g.sig();
  json j;
  j["schema"] = kStructureSchema;
  j["name"] = g.name();
  j["k"] = g.k();
  j["labels"] = sig.names();
  j["action"] = json::array();
  const auto& perms = permutations_of(g.k());
  for (std::size_t p = 0; p < perms.size(); ++p)
    for (Label l = 0; l < sig.label_count(); ++l)
      if (sig.act_rank(p, l) != l) j["action"].push_back({perms[p], sig.name(l), sig.name(sig.act_rank(p, l))});
  j["embed_bounds"] = json::array();
  for (const auto& b : g.embed_bounds()) {
    json e{{"n", b.size()}, {"labels", json::array()}};
    const auto& subs = subsets_of(b.size(), g.k());
    for (std::size_t r = 0; r < subs.size(); ++r)
      if (b.at_rank(r) != kUnset) e["labels"].push_back({subs[r], sig.name(b.at_rank(r))});
    j["embed_bounds"].push_back(std::move(e));
  }
  j["hom_bounds"] = json::array();
  for (const auto& p : g.hom_bounds()) {
    json e{{"n", p.n}, {"facts", json::array()}};
    for (const auto& f : p.facts) e["facts"].push_back({f.tuple, sig.name(f.label)});
    j["hom_bounds"].push_back(std::move(e));
  }
  j["b"] = g.b();
  j["d"] = g.d();
  return j;
}

/// Builtin name, path to a structure file, or an inline JSON object.
inline GroundStructure load_structure(const json& spec) {
  if (spec.is_object()) return structure_from_json(spec);
  if (!spec.is_string()) throw InputError("structure must be a name, a path or an object");
  const auto name = spec.get<std::string>();
  if (auto b = builtin::by_name(name)) return *b;
  if (std::filesystem::exists(name)) return structure_from_json(read_json_file(name));
  throw InputError("unknown structure " + name);
}

// ---------------------------------------------------------------------------
// relations

inline json type_to_json(const Signature& sig, const Type& t) {
  json part = json::array();
  std::vector<int> rep;
  for (int c = 0; c < t.classes(); ++c) {
    json cls = json::array();
    for (int i = 0; i < t.arity(); ++i)
      if (t.cls[i] == c) cls.push_back(i);
    rep.push_back(cls[0].get<int>());
    part.push_back(std::move(cls));
  }
  json types = json::object();
  const int k = t.quot.arity();
  const auto& subs = subsets_of(t.classes(), k);
  for (std::size_t r = 0; r < subs.size(); ++r) {
    std::vector<int> key;
    for (int c : subs[r]) key.push_back(rep[c]);
    types[tuple_key(key)] = sig.name(t.quot.at_rank(r));
  }
  return {{"partition", part}, {"types", types}};
}

inline Type type_from_json(const Signature& sig, int m, const json& j) {
  return guarded([&] {
    std::vector<int> cls(m, -1);
    int c = 0;
    for (const auto& block : j.at("partition")) {
      for (int p : block.get<std::vector<int>>()) {
        if (p < 0 || p >= m || cls[p] >= 0) throw InputError("partition is not a partition of the positions");
        cls[p] = c;
      }
      ++c;
    }
    for (int x : cls)
      if (x < 0) throw InputError("partition does not cover every position");
    Rgs rgs = canonical_rgs(cls);
    std::vector<int> canon(rgs.begin(), rgs.end());
    LabeledStructure x(class_count(rgs), sig.k());
    if (j.contains("types"))
      for (const auto& [key, lab] : j.at("types").items()) {
        auto pos = parse_tuple_key(key);
        if (static_cast<int>(pos.size()) != sig.k()) throw InputError("type key has wrong arity");
        std::vector<int> t;
        for (int p : pos) {
          if (p < 0 || p >= m) throw InputError("type key position out of range");
          t.push_back(canon[p]);
        }
        std::vector<int> s = t;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("type key spans a merged pair");
        Label l = label_from_json(sig, lab);
        Label have = x.get(sig, t);
        if (have != kUnset && have != l) throw InputError("type labels one k-set inconsistently");
        x.set(sig, t, l);
      }
    if (!x.fully_labeled()) throw InputError("type leaves a k-set of classes unlabeled");
    return Type{rgs, x};
  });
}

inline json relation_to_json(const Signature& sig, const TypedRelation& r, const std::vector<std::string>& names) {
  json vars = json::array();
  for (int v : r.vars) vars.push_back(v < static_cast<int>(names.size()) ? names[v] : std::to_string(v));
  json rows = json::array();
  for (const auto& t : r.rows) rows.push_back(type_to_json(sig, t));
  return {{"vars", vars}, {"rows", rows}};
}

/// "orbit:L|L'" for arity k, "orbit:L1,L2,...|..." listing the k-subsets of
/// positions lexicographically for larger arity, "orbit:*" for every
/// injective type.
inline std::vector<Type> orbit_shorthand(const GroundStructure& g, int m, const std::string& text) {
  const auto& sig = g.sig();
  const int k = g.k();
  if (text.rfind("orbit:", 0) != 0) throw InputError("relation shorthand must start with orbit:");
  std::string body = text.substr(6);
  std::vector<int> vars(m);
  std::iota(vars.begin(), vars.end(), 0);
  if (body == "*") return full_relation(g, vars, true).rows;
  if (m < k) throw InputError("only orbit:* is available below arity k");
  const auto lex = subsets_lex(m, k);
  std::vector<Type> rows;
  std::stringstream alts(body);
  std::string alt;
  while (std::getline(alts, alt, '|')) {
    std::vector<std::string> labels;
    std::stringstream ls(alt);
    std::string l;
    while (std::getline(ls, l, ',')) labels.push_back(l);
    if (labels.size() != lex.size())
      throw InputError("orbit alternative '" + alt + "' needs " + std::to_string(lex.size()) + " labels");
    LabeledStructure x(m, k);
    for (std::size_t i = 0; i < lex.size(); ++i) {
      auto lab = sig.find(labels[i]);
      if (!lab) throw InputError("unknown label " + labels[i]);
      x.set(sig, lex[i], *lab);
    }
    if (!realizable(x, g)) throw InputError("orbit alternative '" + alt + "' is not realizable");
    rows.push_back(discrete_type(x));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// instances

struct LoadedInstance {
  GroundStructure structure;
  Instance instance;
};

/// `structure_override` (builtin name or path) wins over the document's field.
inline LoadedInstance instance_from_json(const json& j, const std::string& structure_override = "") {
  return guarded([&] {
    GroundStructure g = structure_override.empty()
                            ? load_structure(j.contains("structure") ? j.at("structure") : json("random-graph"))
                            : load_structure(json(structure_override));
    Instance in;
    std::map<std::string, int> id;
    for (const auto& v : j.at("vars")) {
      auto name = v.get<std::string>();
      if (id.count(name)) throw InputError("duplicate variable " + name);
      id[name] = static_cast<int>(in.names.size());
      in.names.push_back(name);
    }
    for (const auto& c : j.at("constraints")) {
      std::vector<int> scope;
      for (const auto& v : c.at("scope")) {
        auto it = id.find(v.get<std::string>());
        if (it == id.end()) throw InputError("undeclared variable " + v.get<std::string>());
        scope.push_back(it->second);
      }
      const int m = static_cast<int>(scope.size());
      if (m == 0) throw InputError("constraint with empty scope");
      std::vector<Type> rows;
      const auto& rel = c.at("rel");
      if (rel.is_string()) {
        rows = orbit_shorthand(g, m, rel.get<std::string>());
      } else {
        for (const auto& row : rel.at("rows")) {
          Type t = type_from_json(g.sig(), m, row);
          if (!realizable(t.quot, g)) throw InputError("relation row is not realizable");
          rows.push_back(std::move(t));
        }
      }
      in.constraints.push_back(bind_scope(g.sig(), scope, rows));
    }
    return LoadedInstance{std::move(g), std::move(in)};
  });
}

inline LoadedInstance load_instance(const std::string& path, const std::string& structure_override = "") {
  return instance_from_json(read_json_file(path), structure_override);
}

inline json instance_to_json(const GroundStructure& g, const Instance& in) {
  json j;
  j["schema"] = kInstanceSchema;
  if (builtin::by_name(g.name()))
    j["structure"] = g.name();
  else
    j["structure"] = structure_to_json(g);
  j["vars"] = in.names;
  j["constraints"] = json::array();
  for (const auto& c : in.constraints) {
    json scope = json::array();
    for (int v : c.vars) scope.push_back(in.names.at(v));
    json rel = relation_to_json(g.sig(), c, in.names);
    rel.erase("vars");
    j["constraints"].push_back({{"scope", scope}, {"rel", rel}});
  }
  return j;
}

inline json certificate_to_json(const Signature& sig, const Instance& in, const Certificate& cert) {
  json classes = json::array();
  for (int c = 0; c < cert.structure.size(); ++c) {
    json members = json::array();
    for (int x = 0; x < in.var_count(); ++x)
      if (cert.quotient[x] == c) members.push_back(in.names[x]);
    classes.push_back(std::move(members));
  }
  json labels = json::object();
  const auto& subs = subsets_of(cert.structure.size(), cert.structure.arity());
  for (std::size_t r = 0; r < subs.size(); ++r) labels[tuple_key(subs[r])] = sig.name(cert.structure.at_rank(r));
  return {{"classes", classes}, {"labels", labels}};
}

// ---------------------------------------------------------------------------
// operation tables

inline std::vector<OpTable> op_tables_from_json(const json& j) {
  return guarded([&] {
    const int n = j.at("n").get<int>();
    std::vector<OpTable> ops;
    for (const auto& t : j.at("tables")) ops.emplace_back(n, t.get<std::vector<int>>());
    if (ops.empty()) throw InputError("no operation tables");
    return ops;
  });
}

inline json op_tables_to_json(const std::vector<OpTable>& ops) {
  json j;
  j["schema"] = kOpTableSchema;
  j["n"] = ops.empty() ? 0 : ops[0].n;
  j["tables"] = json::array();
  for (const auto& op : ops) j["tables"].push_back(op.table);
  return j;
}

}  // namespace orbitcsp::io
