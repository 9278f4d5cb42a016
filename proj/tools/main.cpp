// fraisse: command-line front end for the checkers, constructions and oracles.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ba_oracles.hpp"
#include "generators.hpp"
#include "fraisse/boolean_algebra.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_amalgam.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_generic.hpp"
#include "fraisse/k1_good.hpp"
#include "fraisse/k1_json.hpp"
#include "fraisse/kdim.hpp"
#include "fraisse/report.hpp"

namespace {

using fraisse::AtomSet;
using fraisse::Error;
using fraisse::ErrorCode;
using fraisse::Report;
using nlohmann::json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int trunc_n = 6;
  std::size_t cap = 20;
  std::uint64_t seed = 1;
  std::string format = "human";
  std::size_t steps = 200;
  std::size_t bound = 3;
  int r = 1;
  int k = 2;
  std::optional<int> n_star;
  int model = 2;
  std::string out;
  std::string expect;
  std::string cls = "k1";
  std::string op;
  std::string file;
  std::size_t make_chain = 0;
};

json config_json(const Config& c) {
  json j = {{"trunc_n", c.trunc_n}, {"cap", c.cap}, {"seed", c.seed},   {"format", c.format},
            {"steps", c.steps},     {"bound", c.bound}, {"r", c.r},     {"k", c.k}};
  if (c.n_star) j["n_star"] = *c.n_star;
  if (!c.op.empty()) j["op"] = c.op;
  if (!c.file.empty()) j["file"] = std::filesystem::path(c.file).filename().string();
  return j;
}

std::string resolve(const std::string& path) {
  if (path.empty()) throw Usage("missing input file");
  if (std::filesystem::exists(path)) return path;
  if (const char* dir = std::getenv("FRAISSE_FIXTURES")) {
    const auto p = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(p)) return p.string();
  }
  throw Usage("no such file: " + path);
}

json load(const std::string& path) { return fraisse::read_json_file(resolve(path)); }

std::string slurp(const std::string& path) {
  std::ifstream in(resolve(path), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Human output lists every clause; json wraps the report with the config and
// the seed. Nothing time-dependent goes into either.
int emit(const std::string& command, const Config& c, const Report& report, const json& result,
         const std::string& text = {}) {
  if (c.format == "json") {
    const json out = {{"command", command}, {"config", config_json(c)}, {"seed", c.seed},
                      {"report", report},   {"result", result}};
    std::cout << out.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << text;
  } else {
    std::cout << command << " (seed " << c.seed << ")\n";
    for (const auto& item : report.items()) {
      std::cout << (item.pass ? "  PASS " : "  FAIL ") << item.id;
      if (!item.detail.empty()) std::cout << ": " << item.detail;
      std::cout << "\n";
    }
    if (!text.empty()) std::cout << text;
    std::cout << (report.passed() ? "all clauses pass\n" : "some clauses fail\n");
  }
  return report.passed() ? 0 : 1;
}

std::map<fraisse::ElemId, fraisse::ElemId> id_map(const json& j) {
  std::map<fraisse::ElemId, fraisse::ElemId> out;
  for (const auto& [k, v] : j.items()) out[static_cast<fraisse::ElemId>(std::stoul(k))] = v.get<fraisse::ElemId>();
  return out;
}

int presentation_n_star(const json& j, const fraisse::K1Structure& m, const Config& c) {
  if (c.n_star) return *c.n_star;
  if (j.value("kind", "k1") == "k1_presentation") return j.at("n_star").get<int>();
  if (j.contains("witness")) return j.at("witness").at("n_star").get<int>();
  if (auto n = fraisse::least_n_star(m)) return *n;
  return -1;
}

int run_check(const Config& c) {
  const json j = load(c.file);
  Report report;
  json result = json::object();
  if (c.cls == "kr0") {
    const auto m = j.get<fraisse::KrStructure>();
    report = fraisse::check_Kr0_membership(m);
    result["max_independent_size"] = fraisse::max_independent_size(m, static_cast<std::size_t>(m.r) + 3);
  } else if (c.cls == "kminus1" || c.cls == "k1") {
    const auto m = fraisse::k1_from_json(j);
    report = fraisse::check_Kminus1(m);
    result["atoms"] = m.atom_count();
    if (c.cls == "k1") {
      const int ns = presentation_n_star(j, m, c);
      result["n_star"] = ns;
      if (ns < 0) {
        report.add("k1.n_star", false, "no n* admits the standard witness");
      } else {
        const auto w = j.contains("witness") && !c.n_star ? fraisse::witness_from_json(j.at("witness"))
                                                         : fraisse::standard_witness(m, ns);
        report.merge(fraisse::check_K1(m, w));
      }
    }
  } else if (c.cls == "free") {
    if (j.value("kind", "") != "k1_pair") throw Usage("--class free expects a k1_pair file");
    const auto small = fraisse::k1_from_json(j.at("small"));
    const auto big = fraisse::k1_from_json(j.at("big"));
    std::string why;
    const auto e = j.contains("embedding")
                       ? fraisse::derive_embedding(small, big, id_map(j.at("embedding").at("P0")),
                                                   id_map(j.at("embedding").at("P2")), &why)
                       : fraisse::inclusion_embedding(small, big, &why);
    if (!e) {
      report.add("free.embedding", false, why);
    } else {
      const int ns = presentation_n_star(j.at("big"), big, c);
      fraisse::FreeExtensionWitness w;
      if (j.contains("witness")) {
        w = j.at("witness").get<fraisse::FreeExtensionWitness>();
      } else if (ns < 0) {
        report.add("free.n_star", false, "no n* admits the standard witness");
        return emit("check", c, report, result);
      } else {
        w = fraisse::extract_free_witness(small, big, *e, ns);
      }
      result["witness"] = w;
      report.merge(fraisse::check_free_extension(small, big, *e, w));
    }
  } else {
    throw Usage("unknown class " + c.cls);
  }
  return emit("check", c, report, result);
}

int run_generic(const Config& c) {
  fraisse::K1GenericOptions options;
  options.n_star = c.n_star.value_or(1);
  options.trunc_n = c.trunc_n;
  options.bound = c.bound;
  options.seed = c.model;
  const auto g = fraisse::build_generic_k1(c.steps, options);
  if (!c.out.empty()) fraisse::write_json_file(c.out, g);
  std::vector<std::size_t> sizes;
  for (const auto& m : g.approx.chain) sizes.push_back(m.size());
  const json result = {{"model", c.model}, {"chain_sizes", sizes}, {"top", g.top},
                       {"core", g.core},   {"defects", g.defects.size()}, {"pending", g.approx.pending_count()}};
  std::ostringstream text;
  text << "chain of " << sizes.size() << " members, top has " << g.top.p0.size() << " P0 and " << g.top.p2.size()
       << " P2 elements, core " << g.core.size() << ", " << g.approx.pending_count() << " tasks pending\n";
  return emit("generic", c, g.report, result, text.str());
}

int run_amalgamate(const Config& c) {
  const json j = load(c.file);
  if (c.cls == "k1") {
    if (j.value("kind", "") != "k1_triple") throw Usage("--class k1 expects a k1_triple file");
    const auto m1 = fraisse::k1_from_json(j.at("m1"));
    const auto n1 = fraisse::k1_from_json(j.at("n1"));
    const auto n2 = fraisse::k1_from_json(j.at("n2"));
    const auto r = fraisse::amalgamate_free(m1, n1, n2, c.n_star);
    if (!c.out.empty()) {
      json m2 = r.m2;
      m2["witness"] = fraisse::standard_witness(r.m2, r.n_star);
      fraisse::write_json_file(c.out, m2);
    }
    return emit("amalgamate", c, r.report, r);
  }
  if (c.cls == "kr0") {
    const auto config = j.get<fraisse::KConfiguration>();
    fraisse::KrStructure amalgam;
    const auto outcome = fraisse::run_frugal(config, &amalgam);
    Report report;
    report.add("frugal.outcome", outcome == fraisse::FrugalOutcome::kSuccess, fraisse::to_string(outcome));
    json result = {{"outcome", fraisse::to_string(outcome)}};
    if (outcome == fraisse::FrugalOutcome::kSuccess) {
      report.merge(fraisse::check_Kr0_membership(amalgam));
      const std::size_t limit = static_cast<std::size_t>(amalgam.r) + 1;
      report.add("frugal.independence", fraisse::max_independent_size(amalgam, limit + 1) <= limit);
      result["amalgam"] = amalgam;
      if (!c.out.empty()) fraisse::write_json_file(c.out, amalgam);
    }
    return emit("amalgamate", c, report, result);
  }
  throw Usage("unknown class " + c.cls);
}

int run_label(const Config& c) {
  fraisse::GoodChain g;
  if (c.make_chain > 0) {
    g = fraisse::make_good_chain(c.seed, c.make_chain);
    if (!c.out.empty()) fraisse::write_json_file(c.out, g);
  } else {
    g = load(c.file).get<fraisse::GoodChain>();
  }
  Report report = fraisse::check_good_sequence(g);
  json result = json::object();
  if (report.passed()) {
    try {
      const auto l = fraisse::label_good_sequence(g);
      report.merge(l.report);
      result = l;
    } catch (const Error& e) {
      report.add("label.error", false, e.what());
    }
  }
  return emit("label", c, report, result);
}

int survey_like(const Config& c, bool oracle) {
  fraisse::SurveyOptions options;
  options.trunc_n = c.trunc_n;
  options.seed = c.seed;
  options.oracle = oracle;
  const auto s = fraisse::survey_k_disjoint_ap(c.r, c.k, c.bound, c.cap, options);
  Report report = s.report;
  const auto& rows = oracle ? s.oracle_rows : s.rows;
  const std::string csv = fraisse::survey_csv(rows);
  if (!c.expect.empty()) {
    const bool same = slurp(c.expect) == csv;
    report.add("survey.fixture", same, same ? "" : "table differs from " + c.expect);
  }
  if (c.format == "csv") {
    std::cout << csv;
    return report.passed() ? 0 : 1;
  }
  json result = {{"rows", rows}};
  return emit(oracle ? "oracle survey" : "survey", c, report, result,
              c.format == "human" ? fraisse::survey_pretty(rows) : std::string());
}

fraisse::PrincipalIdeal ideal_of(const json& j, std::size_t w) {
  return {j.contains("ideal") ? j.at("ideal").get<AtomSet>() : AtomSet(w)};
}

int run_ba(const Config& c) {
  const json j = load(c.file);
  Report report;
  json result = json::object();
  if (c.op == "pushout") {
    const auto a = j.at("a_atoms").get<std::size_t>();
    const auto b = j.at("b_atoms").get<std::size_t>();
    const auto ca = j.at("c_to_a").get<fraisse::BAEmbedding>();
    const auto cb = j.at("c_to_b").get<fraisse::BAEmbedding>();
    const auto d = fraisse::pushout(a, b, ca, cb);
    bool commutes = true;
    for (const auto& z : ca.image) {
      const std::size_t i = static_cast<std::size_t>(&z - ca.image.data());
      commutes = commutes && d.from_a.apply(z) == d.from_b.apply(cb.image[i]);
    }
    report.add("ba.commutes", commutes);
    result = {{"algebra", d.algebra}, {"from_a", d.from_a}, {"from_b", d.from_b}, {"atom_pairs", d.atom_pairs}};
  } else if (c.op == "independent") {
    const auto w = j.at("atoms").get<std::size_t>();
    const auto y = j.at("y").get<std::vector<AtomSet>>();
    const auto x = j.at("x").get<std::vector<AtomSet>>();
    const auto v = fraisse::find_independence_violation(w, y, x, ideal_of(j, w));
    json witness = nullptr;
    if (v) witness = {{"signs", v->signs}, {"base_block", v->base_block}};
    report.add("ba.independent", !v, v ? "a minterm misses a base block outside the ideal" : "", witness);
    result["independent"] = !v;
  } else if (c.op == "basis") {
    const auto n = j.at("n").get<std::size_t>();
    const auto b = j.at("b").get<AtomSet>();
    try {
      const auto basis = fraisse::find_basis_containing(fraisse::FiniteBooleanAlgebra(b.width()), n, b);
      report.add("ba.basis", true);
      result["basis"] = basis;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoBasisThrough && e.code() != ErrorCode::kTrivialElement) throw;
      report.add("ba.basis", false, e.what());
    }
  } else if (c.op == "rebase") {
    const auto w = j.at("atoms").get<std::size_t>();
    const auto b1 = fraisse::Subalgebra::generated_by(w, j.at("b1").get<std::vector<AtomSet>>());
    const auto i2 = ideal_of(j, w);
    const auto j1 = j.at("j1").get<std::vector<AtomSet>>();
    const auto b = j.at("b").get<AtomSet>();
    const auto out = fraisse::rebase_with_element(fraisse::FiniteBooleanAlgebra(w), b1, i2, j1, b);
    report.add("ba.rebase.contains", std::find(out.begin(), out.end(), b) != out.end());
    report.add("ba.rebase.independent", fraisse::is_independent_mod_ideal(w, out, b1.blocks(), i2));
    report.add("ba.rebase.span",
               fraisse::generated_with_ideal(w, out, i2) == fraisse::generated_with_ideal(w, j1, i2));
    result["j1"] = out;
  } else {
    throw Usage("unknown ba operation " + c.op);
  }
  return emit("ba " + c.op, c, report, result);
}

int run_oracle(const Config& c) {
  if (c.op == "survey") return survey_like(c, true);
  Report report;
  json result = json::object();
  if (c.op == "ba") {
    std::mt19937_64 rng(c.seed);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < c.cap; ++i) {
      const auto inst = oracle::independence_instance(rng);
      const std::vector<AtomSet> y(inst.y.begin(), inst.y.end());
      if (fraisse::is_independent_mod_ideal(inst.w, y, inst.x, {inst.ideal}) !=
          oracle::dnf_independent(inst.w, inst.y, inst.x, inst.ideal))
        ++mismatches;
    }
    report.add("oracle.independence", mismatches == 0, std::to_string(mismatches) + " mismatches");
    std::size_t basis_mismatches = 0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.bound, 3); ++n) {
      const std::size_t w = std::size_t{1} << n;
      for (const auto& b : oracle::all_elements(w)) {
        bool fast = true;
        try {
          fraisse::find_basis_containing(fraisse::FiniteBooleanAlgebra(w), n, b);
        } catch (const Error&) {
          fast = false;
        }
        if (fast != oracle::some_basis_contains(n, b)) ++basis_mismatches;
      }
    }
    report.add("oracle.basis", basis_mismatches == 0, std::to_string(basis_mismatches) + " mismatches");
    result = {{"instances", c.cap}, {"independence_mismatches", mismatches}, {"basis_mismatches", basis_mismatches}};
  } else if (c.op == "amalgam") {
    const json j = load(c.file);
    if (j.value("kind", "") != "k1_triple") throw Usage("oracle amalgam expects a k1_triple file");
    const auto pm1 = j.at("m1").get<fraisse::K1Presentation>();
    const auto pn1 = j.at("n1").get<fraisse::K1Presentation>();
    const auto pn2 = j.at("n2").get<fraisse::K1Presentation>();
    const auto r = fraisse::amalgamate_free(fraisse::materialize(pm1), fraisse::materialize(pn1),
                                            fraisse::materialize(pn2), c.n_star);
    const auto mine = json(fraisse::canonical_form(fraisse::encode(fraisse::to_presentation(r.m2, pm1.n_star)))).dump();
    std::size_t found = 0;
    const auto all = fraisse::completion_oracle(pm1, pn1, pn2);
    for (const auto& p : all)
      if (json(fraisse::canonical_form(fraisse::encode(p))).dump() == mine) ++found;
    report.merge(r.report);
    report.add("oracle.amalgam", found > 0, std::to_string(all.size()) + " completions");
    result = {{"completions", all.size()}, {"matches", found}};
  } else {
    throw Usage("unknown oracle " + c.op);
  }
  return emit("oracle " + c.op, c, report, result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite amalgamation classes: checkers, constructions and brute-force oracles"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--trunc-n", c.trunc_n, "Truncation level N")->check(CLI::PositiveNumber);
  app.add_option("--cap", c.cap, "Budget: sampled configurations per shape, oracle instances");
  app.add_option("--seed", c.seed, "Random seed, recorded in every report");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--steps", c.steps, "Construction steps");
  app.add_option("--bound", c.bound, "Size bound");
  app.add_option("--r", c.r, "Dimension parameter r")->check(CLI::PositiveNumber);
  app.add_option("--k", c.k, "Number of members to amalgamate")->check(CLI::Range(2, 4));
  app.add_option("--n-star", c.n_star, "Override n*");
  app.add_option("--out", c.out, "Write the main result to this file");
  app.fallthrough();

  auto* check = app.add_subcommand("check", "Check membership or a free extension");
  check->add_option("--class", c.cls, "kminus1, k1, kr0 or free")
      ->check(CLI::IsMember({"kminus1", "k1", "kr0", "free"}));
  check->add_option("file", c.file)->required();

  auto* generic = app.add_subcommand("generic", "Build a generic approximation and audit it");
  generic->add_option("--model", c.model, "Seed model 0-3")->check(CLI::Range(0, 3));

  auto* amalgamate = app.add_subcommand("amalgamate", "Free amalgam of a k1 triple or a kr0 configuration");
  amalgamate->add_option("--class", c.cls, "k1 or kr0")->check(CLI::IsMember({"k1", "kr0"}));
  amalgamate->add_option("file", c.file)->required();

  auto* label = app.add_subcommand("label", "Check and label a good sequence");
  label->add_option("file", c.file);
  label->add_option("--make-chain", c.make_chain, "Generate a chain of this length instead of reading one");

  auto* survey = app.add_subcommand("survey", "Survey k-disjoint amalgamation for the r-dimensional class");
  survey->add_option("--expect", c.expect, "Fixture table to compare against");

  auto* ba = app.add_subcommand("ba", "Boolean algebra utilities");
  ba->add_option("op", c.op, "pushout, independent, basis or rebase")->required();
  ba->add_option("file", c.file)->required();

  auto* orc = app.add_subcommand("oracle", "Run brute-force oracles against the fast paths");
  orc->add_option("op", c.op, "ba, survey or amalgam")->required();
  orc->add_option("file", c.file);
  orc->add_option("--expect", c.expect, "Fixture table to compare against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (c.format == "csv" && !survey->parsed() && !(orc->parsed() && c.op == "survey")) {
    std::cerr << "--format csv is only available for survey tables\n";
    return 2;
  }

  try {
    if (check->parsed()) return run_check(c);
    if (generic->parsed()) return run_generic(c);
    if (amalgamate->parsed()) return run_amalgamate(c);
    if (label->parsed()) {
      if (c.file.empty() && c.make_chain == 0) throw Usage("label needs a chain file or --make-chain");
      return run_label(c);
    }
    if (survey->parsed()) return survey_like(c, false);
    if (ba->parsed()) return run_ba(c);
    if (orc->parsed()) return run_oracle(c);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kInvalidArgument ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
