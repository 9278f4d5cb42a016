#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fraisse/boolean_algebra.hpp"
#include "fraisse/k1_amalgam.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_structure.hpp"
#include "fraisse/kdim.hpp"

using namespace fraisse;

namespace {

std::vector<AtomSet> random_sets(std::size_t w, std::size_t count, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<AtomSet> out(count, AtomSet(w));
  for (auto& s : out)
    for (std::size_t a = 0; a < w; ++a)
      if (coin(rng)) s.set(a);
  return out;
}

K1Presentation shape(int trunc_n, std::vector<ElemId> p0, std::vector<ElemId> p2,
                     std::map<ElemId, std::vector<std::set<ElemId>>> trace) {
  K1Presentation p;
  p.trunc_n = trunc_n;
  p.n_star = 1;
  p.p0 = std::move(p0);
  p.p2 = std::move(p2);
  p.trace = std::move(trace);
  for (ElemId c : p.p2) p.trace[c].resize(1);
  return p;
}

void BM_GeneratedBy(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto gens = random_sets(w, 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(Subalgebra::generated_by(w, gens));
}
BENCHMARK(BM_GeneratedBy)->Arg(64)->Arg(1024)->Arg(4099);

void BM_GeneratedAtomCount(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto gens = random_sets(w, 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(generated_atom_count(w, gens));
}
BENCHMARK(BM_GeneratedAtomCount)->Arg(64)->Arg(1024)->Arg(4099);

void BM_Independence(benchmark::State& state) {
  const std::size_t w = 16;
  std::mt19937_64 rng(2);
  const auto y = random_sets(w, static_cast<std::size_t>(state.range(0)), rng);
  const auto x = random_sets(w, 3, rng);
  const PrincipalIdeal ideal{AtomSet::from_indices(w, {0, 1})};
  for (auto _ : state) benchmark::DoNotOptimize(is_independent_mod_ideal(w, y, x, ideal));
}
BENCHMARK(BM_Independence)->Arg(1)->Arg(2)->Arg(3);

void BM_Pushout(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<AtomSet> a, b;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(AtomSet::from_indices(2 * n, {2 * i, 2 * i + 1}));
    b.push_back(AtomSet::from_indices(3 * n, {3 * i, 3 * i + 1, 3 * i + 2}));
  }
  const BAEmbedding to_a{2 * n, a}, to_b{3 * n, b};
  for (auto _ : state) benchmark::DoNotOptimize(pushout(2 * n, 3 * n, to_a, to_b));
}
BENCHMARK(BM_Pushout)->Arg(2)->Arg(8)->Arg(32);

void BM_FreeAmalgam(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m1 = materialize(shape(n, {0, 1}, {2}, {{2, {{0, 1}}}}));
  const auto n1 = materialize(shape(n, {0}, {}, {}));
  const auto n2 = materialize(shape(n, {0, 5}, {6}, {{6, {{5}}}}));
  for (auto _ : state) benchmark::DoNotOptimize(amalgamate_free(m1, n1, n2, 1));
}
BENCHMARK(BM_FreeAmalgam)->Arg(2)->Arg(4);

void BM_K1Membership(benchmark::State& state) {
  const auto m = materialize(shape(6, {0, 1}, {2, 3}, {{2, {{0}}}, {3, {{0, 1}}}}));
  for (auto _ : state) benchmark::DoNotOptimize(least_n_star(m));
}
BENCHMARK(BM_K1Membership);

void BM_Survey(benchmark::State& state) {
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(survey_k_disjoint_ap(1, 2, bound, 20));
}
BENCHMARK(BM_Survey)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
