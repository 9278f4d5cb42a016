// Regenerates the JSON fixtures: make_fixtures OUTDIR
#include <iostream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_build.hpp"
#include "fraisse/k1_good.hpp"
#include "fraisse/k1_json.hpp"
#include "fraisse/kdim.hpp"

using namespace fraisse;
using nlohmann::json;

namespace {

K1Presentation shape(int trunc_n, int n_star, std::vector<ElemId> p0, std::vector<ElemId> p2,
                     std::map<ElemId, std::vector<std::set<ElemId>>> trace) {
  K1Presentation p;
  p.trunc_n = trunc_n;
  p.n_star = n_star;
  p.p0 = std::move(p0);
  p.p2 = std::move(p2);
  p.trace = std::move(trace);
  for (ElemId c : p.p2) p.trace[c].resize(static_cast<std::size_t>(n_star));
  validate(p);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUTDIR\n";
    return 2;
  }
  const std::string dir = std::string(argv[1]) + "/";
  write_json_file(dir + "minimal.json", minimal_model(6));

  const auto big = shape(6, 1, {0, 1}, {2, 3}, {{2, {{0}}}, {3, {{0, 1}}}});
  write_json_file(dir + "presentation.json", big);
  const auto small = shape(6, 1, {0}, {2}, {{2, {{0}}}});
  std::mt19937_64 mrng(1);
  write_json_file(dir + "broken.json", *kminus1_mutant(materialize(small), 2, mrng));
  write_json_file(dir + "pair.json", json{{"schema_version", kSchemaVersion}, {"kind", "k1_pair"},
                                          {"small", small}, {"big", big}});

  const auto m1 = shape(2, 1, {0, 1}, {2}, {{2, {{0, 1}}}});
  const auto n1 = shape(2, 1, {0}, {}, {});
  const auto n2 = shape(2, 1, {0, 5}, {6}, {{6, {{5}}}});
  write_json_file(dir + "triple.json", json{{"schema_version", kSchemaVersion}, {"kind", "k1_triple"},
                                            {"m1", m1}, {"n1", n1}, {"n2", n2}});

  write_json_file(dir + "chain.json", make_good_chain(3, 3));

  for (const auto& [key, config] : survey_configurations(1, 2, 3, 20)) {
    KrStructure amalgam;
    if (key.sizes != std::vector<std::size_t>{2, 2}) continue;
    if (run_frugal(config, &amalgam) != FrugalOutcome::kSuccess) continue;
    write_json_file(dir + "kr_config.json", config);
    write_json_file(dir + "kr_member.json", amalgam);
    break;
  }

  // C has two atoms, A and B three each
  json pushout = {{"schema_version", kSchemaVersion},
                  {"a_atoms", 3},
                  {"b_atoms", 3},
                  {"c_to_a", BAEmbedding{3, {AtomSet::from_indices(3, {0, 1}), AtomSet::from_indices(3, {2})}}},
                  {"c_to_b", BAEmbedding{3, {AtomSet::from_indices(3, {0}), AtomSet::from_indices(3, {1, 2})}}}};
  write_json_file(dir + "pushout.json", pushout);

  std::mt19937_64 rng(11);
  const auto ind = oracle::independence_instance(rng);
  write_json_file(dir + "independent.json", json{{"schema_version", kSchemaVersion}, {"atoms", ind.w},
                                                 {"y", ind.y}, {"x", ind.x}, {"ideal", ind.ideal}});
  write_json_file(dir + "basis.json", json{{"schema_version", kSchemaVersion}, {"n", 3},
                                           {"b", AtomSet::from_indices(8, {0, 3, 5, 6})}});
  const auto rb = oracle::rebase_instance(rng);
  write_json_file(dir + "rebase.json", json{{"schema_version", kSchemaVersion}, {"atoms", rb.w}, {"b1", rb.b1},
                                            {"ideal", rb.ideal}, {"j1", rb.j1}, {"b", rb.b}});
  return 0;
}
