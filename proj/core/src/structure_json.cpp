#include <fstream>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

using nlohmann::json;

void to_json(json& j, const AtomSet& s) { j = s.to_hex(); }

void from_json(const json& j, AtomSet& s) {
  if (!j.is_string()) throw Error(ErrorCode::kParseError, "atom set must be a \"width:hex\" string");
  s = AtomSet::from_hex(j.get<std::string>());
}

void to_json(json& j, const Vocabulary& v) {
  j = json::object();
  j["relations"] = json::array();
  for (const auto& r : v.relations()) j["relations"].push_back({{"name", r.name}, {"arity", r.arity}});
  j["functions"] = json::array();
  for (const auto& f : v.functions())
    j["functions"].push_back({{"name", f.name}, {"arity", f.arity}, {"partial", f.partial}});
  j["constants"] = v.constants();
  if (v.index_bound()) j["index_bound"] = *v.index_bound();
}

void from_json(const json& j, Vocabulary& v) {
  try {
    v = Vocabulary{};
    for (const auto& r : j.at("relations")) v.add_relation(r.at("name"), r.at("arity"));
    for (const auto& f : j.at("functions")) v.add_function(f.at("name"), f.at("arity"), f.value("partial", false));
    for (const auto& c : j.at("constants")) v.add_constant(c.get<std::string>());
    if (j.contains("index_bound")) v.set_index_bound(j.at("index_bound"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("vocabulary: ") + e.what());
  }
}

void require_schema(const json& j) {
  if (!j.is_object() || !j.contains("schema_version"))
    throw Error(ErrorCode::kParseError, "missing schema_version");
  if (j.at("schema_version") != kSchemaVersion)
    throw Error(ErrorCode::kParseError, "unsupported schema_version " + j.at("schema_version").dump());
}

void to_json(json& j, const FiniteStructure& m) {
  const auto& v = m.vocabulary();
  j = json::object();
  j["schema_version"] = kSchemaVersion;
  j["vocabulary"] = v;
  j["universe"] = m.universe();
  json rel = json::object();
  for (std::size_t r = 0; r < v.relations().size(); ++r) rel[v.relations()[r].name] = m.tuples(r);
  j["relations"] = rel;
  json fun = json::object();
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    json entries = json::array();
    for (const auto& [args, val] : m.graph(f)) entries.push_back({args, val});
    fun[v.functions()[f].name] = entries;
  }
  j["functions"] = fun;
  json con = json::object();
  for (std::size_t c = 0; c < v.constants().size(); ++c)
    con[v.constants()[c]] = m.constant(c) ? json(*m.constant(c)) : json(nullptr);
  j["constants"] = con;
}

void from_json(const json& j, FiniteStructure& m) {
  require_schema(j);
  try {
    Vocabulary v = j.at("vocabulary").get<Vocabulary>();
    FiniteStructure out(v);
    for (const auto& e : j.at("universe")) out.add_element(e.get<ElemId>());
    for (const auto& [name, tuples] : j.at("relations").items())
      for (const auto& t : tuples) out.add_tuple(name, t.get<Tuple>());
    for (const auto& [name, entries] : j.at("functions").items())
      for (const auto& e : entries) out.set_value(name, e.at(0).get<Tuple>(), e.at(1).get<ElemId>());
    for (const auto& [name, val] : j.at("constants").items())
      if (!val.is_null()) out.set_constant(name, val.get<ElemId>());
    out.validate();
    m = std::move(out);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("structure: ") + e.what());
  }
}

void to_json(json& j, const Embedding& e) { j = {{"source", e.source_universe}, {"image", e.image}}; }

void from_json(const json& j, Embedding& e) {
  try {
    e.source_universe = j.at("source").get<std::vector<ElemId>>();
    e.image = j.at("image").get<std::vector<ElemId>>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, std::string("embedding: ") + ex.what());
  }
  if (e.source_universe.size() != e.image.size()) throw Error(ErrorCode::kParseError, "embedding arity mismatch");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace fraisse
