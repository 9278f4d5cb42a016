#include "fraisse/k1_json.hpp"

#include <algorithm>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

using nlohmann::json;

namespace {

template <class V>
json keyed(const std::map<ElemId, V>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

template <class V>
std::map<ElemId, V> unkeyed(const json& j) {
  std::map<ElemId, V> out;
  for (const auto& [k, v] : j.items()) out[static_cast<ElemId>(std::stoul(k))] = v.template get<V>();
  return out;
}

template <class F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": bad id key");
  }
}

}  // namespace

void to_json(json& j, const K1Structure& m) {
  j = {{"schema_version", kSchemaVersion},
       {"kind", "k1"},
       {"trunc_n", m.trunc_n},
       {"P0", m.p0},
       {"P2", m.p2},
       {"atoms", m.atom_count()},
       {"designated_atoms", m.p1.designated().indices()},
       {"b_star", m.b_star()},
       {"G1", keyed(m.g1)},
       {"F_table", keyed(m.f)},
       {"free_generators", m.p1.named()}};
}

void from_json(const json& j, K1Structure& m) {
  require_schema(j);
  m = parsing("k1 structure", [&] {
    K1Structure out;
    out.trunc_n = j.at("trunc_n").get<int>();
    out.p0 = j.at("P0").get<std::vector<ElemId>>();
    out.p2 = j.at("P2").get<std::vector<ElemId>>();
    std::sort(out.p0.begin(), out.p0.end());
    std::sort(out.p2.begin(), out.p2.end());
    const auto w = j.at("atoms").get<std::size_t>();
    out.p1 = FiniteBooleanAlgebra(w, AtomSet::from_indices(w, j.at("designated_atoms").get<std::vector<std::size_t>>()));
    if (j.contains("free_generators"))
      for (const auto& [label, x] : j.at("free_generators").items()) out.p1.name(label, x.get<AtomSet>());
    out.g1 = unkeyed<AtomSet>(j.at("G1"));
    out.f = unkeyed<std::vector<AtomSet>>(j.at("F_table"));
    return out;
  });
}

void to_json(json& j, const K1Witness& w) {
  json chain = json::array();
  for (const auto& s : w.chain) chain.push_back(s.blocks());
  j = {{"n_star", w.n_star}, {"chain", chain}, {"b_star", w.b_star}};
}

K1Witness witness_from_json(const json& j) {
  return parsing("k1 witness", [&] {
    K1Witness w;
    w.n_star = j.at("n_star").get<int>();
    w.b_star = j.at("b_star").get<AtomSet>();
    for (const auto& blocks : j.at("chain"))
      w.chain.push_back(Subalgebra::from_blocks(w.b_star.width(), blocks.get<std::vector<AtomSet>>()));
    return w;
  });
}

void to_json(json& j, const K1Presentation& p) {
  json traces = json::object();
  for (const auto& [c, rows] : p.trace) traces[std::to_string(c)] = rows;
  j = {{"schema_version", kSchemaVersion},
       {"kind", "k1_presentation"},
       {"trunc_n", p.trunc_n},
       {"n_star", p.n_star},
       {"P0", p.p0},
       {"P2", p.p2},
       {"traces", traces},
       {"named", p.named}};
}

void from_json(const json& j, K1Presentation& p) {
  require_schema(j);
  p = parsing("k1 presentation", [&] {
    K1Presentation out;
    out.trunc_n = j.at("trunc_n").get<int>();
    out.n_star = j.at("n_star").get<int>();
    out.p0 = j.at("P0").get<std::vector<ElemId>>();
    out.p2 = j.at("P2").get<std::vector<ElemId>>();
    std::sort(out.p0.begin(), out.p0.end());
    std::sort(out.p2.begin(), out.p2.end());
    if (j.contains("traces")) out.trace = unkeyed<std::vector<std::set<ElemId>>>(j.at("traces"));
    for (ElemId c : out.p2) out.trace[c].resize(static_cast<std::size_t>(std::max(out.n_star, 0)));
    if (j.contains("named")) out.named = j.at("named").get<std::vector<std::set<ElemId>>>();
    return out;
  });
  validate(p);
}

void to_json(json& j, const K1Embedding& e) { j = {{"P0", keyed(e.p0)}, {"P2", keyed(e.p2)}, {"P1", e.p1}}; }

void from_json(const json& j, K1Embedding& e) {
  e = parsing("k1 embedding", [&] {
    K1Embedding out;
    out.p0 = unkeyed<ElemId>(j.at("P0"));
    out.p2 = unkeyed<ElemId>(j.at("P2"));
    out.p1 = j.at("P1").get<BAEmbedding>();
    return out;
  });
}

void to_json(json& j, const FreeExtensionWitness& w) { j = {{"I", w.i}, {"H", keyed(w.h)}}; }

void from_json(const json& j, FreeExtensionWitness& w) {
  w = parsing("free extension witness", [&] {
    FreeExtensionWitness out;
    out.i = j.at("I").get<std::vector<AtomSet>>();
    out.h = unkeyed<int>(j.at("H"));
    return out;
  });
}

void to_json(json& j, const PresentationFreeWitness& w) {
  json coords = json::array();
  for (const auto& [c, n] : w.i) coords.push_back({c, n});
  j = {{"I", coords}, {"H", keyed(w.h)}};
}

void to_json(json& j, const FreeAmalgamResult& r) {
  j = {{"m2", r.m2},           {"n_star", r.n_star},       {"m1_to_m2", r.m1_to_m2},
       {"n2_to_m2", r.n2_to_m2}, {"n2_ids", keyed(r.n2_ids)}, {"witness", r.witness},
       {"fresh_atoms", r.fresh_atoms}, {"report", r.report}};
}

void to_json(json& j, const DisjointAmalgamResult& r) {
  j = {{"m3", r.m3},
       {"m1_to_m3", r.m1_to_m3},
       {"m2_to_m3", r.m2_to_m3},
       {"m2_ids", keyed(r.m2_ids)},
       {"witness", r.witness},
       {"report", r.report}};
}

void to_json(json& j, const GoodChain& g) {
  json links = json::array();
  for (const auto& l : g.links) links.push_back({{"embedding", l.e}, {"witness", l.w}});
  j = {{"schema_version", kSchemaVersion}, {"kind", "k1_chain"}, {"chain", g.chain}, {"links", links}, {"b", g.b}};
}

void from_json(const json& j, GoodChain& g) {
  require_schema(j);
  g = parsing("k1 chain", [&] {
    GoodChain out;
    for (const auto& m : j.at("chain")) {
      json copy = m;
      if (!copy.contains("schema_version")) copy["schema_version"] = kSchemaVersion;
      out.chain.push_back(copy.get<K1Structure>());
    }
    for (const auto& l : j.at("links"))
      out.links.push_back({l.at("embedding").get<K1Embedding>(), l.at("witness").get<FreeExtensionWitness>()});
    out.b = j.at("b").get<std::vector<AtomSet>>();
    return out;
  });
}

void to_json(json& j, const LabelResult& r) {
  json h = json::array();
  for (const auto& m : r.h) h.push_back(keyed(m));
  j = {{"labeled", r.labeled}, {"c", r.c}, {"over_chain", r.over_chain},
       {"rebased", r.rebased}, {"H", h},  {"report", r.report}};
}

K1Structure k1_from_json(const json& j) {
  const std::string kind = j.value("kind", "k1");
  if (kind == "k1_presentation") return materialize(j.get<K1Presentation>());
  if (kind == "k1") return j.get<K1Structure>();
  throw Error(ErrorCode::kParseError, "expected a k1 structure or presentation, got " + kind);
}

}  // namespace fraisse
