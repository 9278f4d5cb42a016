// Acceptance gate: one PASS/FAIL line per criterion, each with its time limit.
// Usage: acceptance [--cli PATH] [--only N]...
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ba_oracles.hpp"
#include "generators.hpp"
#include "fraisse/boolean_algebra.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_amalgam.hpp"
#include "fraisse/k1_build.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_generic.hpp"
#include "fraisse/k1_good.hpp"
#include "fraisse/k1_json.hpp"
#include "fraisse/kdim.hpp"

using namespace fraisse;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string cli_path;

// ---- 1: pushout laws -----------------------------------------------------

Outcome pushout_laws() {
  Outcome out;
  std::size_t cases = 0;
  for (std::size_t c = 1; c <= 3; ++c) {
    const auto c_elems = oracle::all_elements(c);
    for (std::size_t a = c; a <= 4; ++a) {
      const auto sa = oracle::surjections(a, c);
      for (std::size_t b = c; b <= 4; ++b) {
        const auto sb = oracle::surjections(b, c);
        for (const auto& pa : sa) {
          for (const auto& pb : sb) {
            ++cases;
            const auto ca = oracle::embedding_of(c, pa);
            const auto cb = oracle::embedding_of(c, pb);
            const auto d = pushout(a, b, ca, cb);
            const std::size_t w = d.algebra.atom_count();
            const auto a_elems = oracle::all_elements(a);
            const auto b_elems = oracle::all_elements(b);
            auto in_c_a = [&](const AtomSet& x) {
              return std::any_of(c_elems.begin(), c_elems.end(), [&](const AtomSet& z) { return ca.apply(z) == x; });
            };
            auto in_c_b = [&](const AtomSet& y) {
              return std::any_of(c_elems.begin(), c_elems.end(), [&](const AtomSet& z) { return cb.apply(z) == y; });
            };
            for (const auto& z : c_elems)
              if (d.from_a.apply(ca.apply(z)) != d.from_b.apply(cb.apply(z))) out.fail("square does not commute");
            std::set<AtomSet> ia, ib;
            for (const auto& x : a_elems) ia.insert(d.from_a.apply(x));
            for (const auto& y : b_elems) ib.insert(d.from_b.apply(y));
            if (ia.size() != a_elems.size() || ib.size() != b_elems.size()) out.fail("a leg is not injective");
            for (const auto& x : a_elems) {
              const AtomSet fx = d.from_a.apply(x);
              const bool xc = in_c_a(x);
              for (const auto& y : b_elems) {
                const AtomSet fy = d.from_b.apply(y);
                const bool yc = in_c_b(y);
                // (a) ranges meet only in the image of C
                if (fx == fy) {
                  bool common = false;
                  for (const auto& z : c_elems) common = common || (ca.apply(z) == x && cb.apply(z) == y);
                  if (!common) out.fail("ranges meet outside C");
                }
                if (xc || yc) continue;
                // (b) order between the new parts passes through C
                bool up = false, down = false;
                for (const auto& z : c_elems) {
                  up = up || (x.is_subset_of(ca.apply(z)) && cb.apply(z).is_subset_of(y));
                  down = down || (y.is_subset_of(cb.apply(z)) && ca.apply(z).is_subset_of(x));
                }
                if (fx.is_subset_of(fy) != up || fy.is_subset_of(fx) != down) out.fail("order not through C");
              }
            }
            std::vector<AtomSet> gens;
            for (std::size_t i = 0; i < a; ++i) gens.push_back(d.from_a.apply(AtomSet::single(a, i)));
            for (std::size_t i = 0; i < b; ++i) gens.push_back(d.from_b.apply(AtomSet::single(b, i)));
            if (oracle::signature_atoms(w, gens, AtomSet(w)).size() != w) out.fail("not generated by A and B");

            // (c) every compatible pair g: A -> E, h: B -> E factors uniquely.
            // A homomorphism into P(e) is a map from E's atoms, so a factoring
            // map picks for each E atom a D atom below both images.
            std::vector<std::vector<std::size_t>> meet(a, std::vector<std::size_t>(b, 0));
            std::vector<std::vector<bool>> compatible(a, std::vector<bool>(b, true));
            for (std::size_t al = 0; al < a; ++al)
              for (std::size_t be = 0; be < b; ++be) {
                const AtomSet x = d.from_a.apply(AtomSet::single(a, al));
                const AtomSet y = d.from_b.apply(AtomSet::single(b, be));
                for (std::size_t de = 0; de < w; ++de) meet[al][be] += x.test(de) && y.test(de);
                for (const auto& z : c_elems) compatible[al][be] = compatible[al][be] && ca.apply(z).test(al) == cb.apply(z).test(be);
              }
            for (std::size_t e = 1; e <= 4; ++e) {
              const auto gs = oracle::all_maps(e, a);
              const auto hs = oracle::all_maps(e, b);
              for (const auto& g : gs)
                for (const auto& h : hs) {
                  bool ok = true;
                  std::size_t count = 1;
                  for (std::size_t i = 0; i < e; ++i) {
                    ok = ok && compatible[g[i]][h[i]];
                    count *= meet[g[i]][h[i]];
                  }
                  if (count != (ok ? 1u : 0u)) out.fail("universal property fails");
                }
            }
            if (!out.pass) {
              out.detail += " (C=" + std::to_string(c) + " A=" + std::to_string(a) + " B=" + std::to_string(b) + ")";
              return out;
            }
          }
        }
      }
    }
  }
  out.detail = std::to_string(cases) + " pushout squares";
  return out;
}

// ---- 2: independence against the polynomial definition --------------------

Outcome independence_agrees() {
  Outcome out;
  std::mt19937_64 rng(2024);
  std::size_t yes = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = oracle::independence_instance(rng);
    const std::vector<AtomSet> y(inst.y.begin(), inst.y.end());
    const bool fast = is_independent_mod_ideal(inst.w, y, inst.x, {inst.ideal});
    const bool slow = oracle::dnf_independent(inst.w, inst.y, inst.x, inst.ideal);
    yes += slow;
    if (fast != slow) out.fail("instance " + std::to_string(i) + " disagrees");
  }
  if (out.pass) out.detail = "1000 instances, " + std::to_string(yes) + " independent";
  if (yes == 0 || yes == 1000) out.fail("instances are all on one side");
  return out;
}

// ---- 3: chained independence ---------------------------------------------

Outcome chained_independence() {
  Outcome out;
  std::mt19937_64 rng(3);
  std::size_t hits = 0, draws = 0;
  while (hits < 200 && draws < 50000) {
    ++draws;
    const auto inst = oracle::chain_instance(rng);
    const std::size_t w = inst.w;
    // I1 = I2 ∩ B1 is generated by the union of the B1 atoms inside I2
    AtomSet i1(w);
    for (const auto& atom : oracle::signature_atoms(w, inst.b1, AtomSet(w)))
      if (atom.is_subset_of(inst.ideal)) i1 |= atom;
    const std::set<AtomSet> j0(inst.j0.begin(), inst.j0.end());
    const std::set<AtomSet> j1(inst.j1.begin(), inst.j1.end());
    if (j0.size() != inst.j0.size() || j1.size() != inst.j1.size()) continue;
    if (!oracle::minterm_independent(w, j0, inst.b0, i1)) continue;
    std::vector<AtomSet> b1_all = inst.b1;
    if (!oracle::minterm_independent(w, j1, b1_all, inst.ideal)) continue;
    ++hits;
    std::set<AtomSet> both = j0;
    both.insert(j1.begin(), j1.end());
    if (both.size() != j0.size() + j1.size()) {
      out.fail("draw " + std::to_string(draws) + ": J0 and J1 share an element");
      continue;
    }
    const bool slow = oracle::minterm_independent(w, both, inst.b0, inst.ideal);
    const std::vector<AtomSet> all(both.begin(), both.end());
    const bool fast = is_independent_mod_ideal(w, all, inst.b0, {inst.ideal});
    if (!slow || !fast) out.fail("draw " + std::to_string(draws) + ": conclusion fails");
  }
  if (hits < 200) out.fail("only " + std::to_string(hits) + " draws met the hypotheses");
  if (out.pass) out.detail = "200 instances from " + std::to_string(draws) + " draws";
  return out;
}

// ---- 4: bases through an element, rebasing --------------------------------

Outcome bases_and_rebasing() {
  Outcome out;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t w = std::size_t{1} << n;
    const FiniteBooleanAlgebra f(w);
    for (const auto& b : oracle::all_elements(w)) {
      ++checked;
      const bool half = b.count() == w / 2;
      const bool exists = oracle::some_basis_contains(n, b);
      if (half != exists) out.fail("oracle disagrees with the half-atom count");
      try {
        const auto basis = find_basis_containing(f, n, b);
        if (!exists) out.fail("found a basis the oracle rules out");
        if (basis.empty() || basis.front() != b || !oracle::is_free_basis(n, basis)) out.fail("returned basis is wrong");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoBasisThrough && e.code() != ErrorCode::kTrivialElement) out.fail(std::string("unexpected error ") + e.what());
        if (exists) out.fail("missed a basis for " + b.to_hex());
      }
    }
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto inst = oracle::rebase_instance(rng);
    const std::size_t w = inst.w;
    const std::set<AtomSet> j1(inst.j1.begin(), inst.j1.end());
    if (!oracle::minterm_independent(w, j1, inst.b1, inst.ideal)) {
      out.fail("generator produced a dependent J1");
      continue;
    }
    try {
      const auto next = rebase_with_element(FiniteBooleanAlgebra(w), Subalgebra::generated_by(w, inst.b1),
                                            {inst.ideal}, inst.j1, inst.b);
      const std::set<AtomSet> ns(next.begin(), next.end());
      if (!ns.contains(inst.b)) out.fail("instance " + std::to_string(i) + ": b missing");
      if (ns.size() != next.size()) out.fail("instance " + std::to_string(i) + ": repeated element");
      const bool indep = ns.size() <= 3 ? oracle::dnf_independent(w, ns, inst.b1, inst.ideal)
                                        : oracle::minterm_independent(w, ns, inst.b1, inst.ideal);
      if (!indep) out.fail("instance " + std::to_string(i) + ": not independent");
      if (oracle::signature_atoms(w, next, inst.ideal) != oracle::signature_atoms(w, inst.j1, inst.ideal))
        out.fail("instance " + std::to_string(i) + ": span changed");
    } catch (const Error& e) {
      out.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " elements, 100 rebasings";
  return out;
}

// ---- 5: K1 membership, freeness, mutants ----------------------------------

Outcome k1_membership() {
  Outcome out;
  const auto minimal = minimal_model(6);
  if (!check_Kminus1(minimal).passed() || !check_K1(minimal, standard_witness(minimal, 0)).passed())
    out.fail("minimal model fails");
  const auto corpus = k1_corpus({});
  std::size_t pairs = 0;
  for (const auto& p : corpus) {
    const auto m = materialize(p);
    if (!check_Kminus1(m).passed() || !check_K1(m, standard_witness(m, p.n_star)).passed()) {
      out.fail("corpus member fails: " + json(p).dump());
      continue;
    }
    for (const auto& q : sub_presentations(p)) {
      const auto m0 = materialize(q);
      const auto e = inclusion_embedding(m0, m);
      ++pairs;
      if (!e) {
        out.fail("sub-presentation does not embed");
        continue;
      }
      try {
        const auto w = extract_free_witness(m0, m, *e, p.n_star);
        if (!check_free_extension(m0, m, *e, w).passed()) out.fail("free witness fails for " + json(q).dump());
      } catch (const Error& err) {
        out.fail(err.what());
      }
    }
  }
  std::mt19937_64 rng(5);
  std::vector<std::string> tally;
  for (int clause = 1; clause <= 16; ++clause) {
    const bool minus = clause <= 9;
    const int c = minus ? clause : clause - 9;
    const std::string id = (minus ? "kminus1." : "k1.") + std::to_string(c);
    std::size_t made = 0;
    for (std::size_t i = 0; made < 10 && i < corpus.size() * 4; ++i) {
      const auto& p = corpus[(i * 37) % corpus.size()];
      const auto base = materialize(p);
      std::vector<std::string> failed;
      if (minus) {
        const auto m = kminus1_mutant(base, c, rng);
        if (!m) continue;
        failed = check_Kminus1(*m).failed_ids();
      } else {
        const auto m = k1_mutant(base, p.n_star, c, rng);
        if (!m) continue;
        failed = check_Kminus1(m->m).failed_ids();
        for (const auto& f : check_K1(m->m, m->w).failed_ids()) failed.push_back(f);
      }
      ++made;
      if (failed != std::vector<std::string>{id}) {
        std::string got;
        for (const auto& f : failed) got += f + " ";
        out.fail("mutant for " + id + " fails: " + got);
      }
    }
    if (made < 10) out.fail("only " + std::to_string(made) + " mutants for " + id);
  }
  if (out.pass)
    out.detail = std::to_string(corpus.size()) + " members, " + std::to_string(pairs) + " pairs, 160 mutants";
  return out;
}

// ---- 6: free amalgamation -------------------------------------------------

struct Triple {
  K1Presentation m1, n1, n2;
};

std::vector<Triple> amalgam_triples() {
  std::vector<Triple> out;
  const auto corpus = k1_corpus({.trunc_n = 2, .max_p0 = 3, .max_p2 = 1, .max_n_star = 1});
  for (const auto& m1 : corpus) {
    if (materialize(m1).atom_count() > 10) continue;
    for (const auto& n1 : sub_presentations(m1)) {
      for (int shape = 0; shape < 4; ++shape) {
        K1Presentation n2 = n1;
        const ElemId a = 100, c = 101;
        if (shape & 1) n2.p0.push_back(a);
        if (shape & 2) {
          n2.p2.push_back(c);
          n2.trace[c].resize(static_cast<std::size_t>(n2.n_star));
          for (auto& row : n2.trace[c])
            if (shape & 1) row.insert(a);
            else if (!n2.p0.empty()) row.insert(n2.p0.front());
        }
        if (shape == 0) continue;
        out.push_back({m1, n1, n2});
      }
    }
  }
  return out;
}

Outcome free_amalgamation() {
  Outcome out;
  const auto triples = amalgam_triples();
  std::size_t compared = 0, run = 0;
  // every third triple keeps the run inside its budget while covering all shapes
  for (std::size_t t = 0; t < triples.size(); t += 3) {
    const auto& [p1, q1, q2] = triples[t];
    const auto m1 = materialize(p1);
    const auto n1 = materialize(q1);
    const auto n2 = materialize(q2);
    ++run;
    const std::string tag = "triple " + std::to_string(t) + ": ";
    try {
      const auto r = amalgamate_free(m1, n1, n2);
      if (!r.report.passed()) out.fail(tag + "report fails " + json(r.report.failed_ids()).dump());
      // designated atoms: the image of M1's plus one fresh atom per new P0 element
      AtomSet expect = r.m1_to_m2.apply(m1.b_star());
      std::size_t new_p0 = q2.p0.size() - q1.p0.size();
      if (r.fresh_atoms.size() != new_p0) out.fail(tag + "wrong number of fresh atoms");
      for (std::size_t i : r.fresh_atoms) {
        if (expect.test(i)) out.fail(tag + "fresh atom inside the image");
        expect.set(i);
      }
      if (expect != r.m2.b_star()) out.fail(tag + "designated atoms differ");
      // f: N2 -> M2 over N1, new ids outside M1
      std::set<ElemId> m1_ids(p1.p0.begin(), p1.p0.end());
      m1_ids.insert(p1.p2.begin(), p1.p2.end());
      std::set<ElemId> images;
      for (const auto& [from, to] : r.n2_ids) {
        images.insert(to);
        const bool old = std::find(q1.p0.begin(), q1.p0.end(), from) != q1.p0.end() ||
                         std::find(q1.p2.begin(), q1.p2.end(), from) != q1.p2.end();
        if (old && to != from) out.fail(tag + "f moves N1");
        if (!old && m1_ids.contains(to)) out.fail(tag + "ranges overlap");
      }
      if (images.size() != r.n2_ids.size()) out.fail(tag + "f is not injective");
      for (ElemId a : q2.p0)
        if (r.n2_to_m2.apply(n2.g1.at(a)) != r.m2.g1.at(r.n2_ids.at(a))) out.fail(tag + "f breaks G1");
      for (ElemId c : q2.p2)
        for (int n = 0; n < q2.trunc_n; ++n)
          if (r.n2_to_m2.apply(n2.value(c, n)) != r.m2.value(r.n2_ids.at(c), n)) out.fail(tag + "f breaks F");
      if (!check_Kminus1(r.m2).passed() || !check_K1(r.m2, standard_witness(r.m2, r.n_star)).passed())
        out.fail(tag + "amalgam is not a member");
      if (!check_free_extension(m1, r.m2, r.m1_to_m2, r.witness).passed()) out.fail(tag + "witness fails");
      if (r.m2.atom_count() <= 12) {
        ++compared;
        // compare in the inputs' vocabulary; r.n_star may be smaller
        const auto mine = json(canonical_form(encode(to_presentation(r.m2, p1.n_star)))).dump();
        bool found = false;
        for (const auto& p : completion_oracle(p1, q1, q2))
          found = found || json(canonical_form(encode(p))).dump() == mine;
        if (!found) out.fail(tag + "amalgam is not among the completions");
      }
    } catch (const Error& e) {
      out.fail(tag + e.what());
    }
  }
  if (run < 50) out.fail("only " + std::to_string(run) + " triples");
  if (out.pass) out.detail = std::to_string(run) + " triples, " + std::to_string(compared) + " against the oracle";
  return out;
}

// ---- 7: generic model -----------------------------------------------------

Outcome generic_model() {
  Outcome out;
  std::vector<K1Generic> runs;
  for (int seed : {2, 3}) {
    K1GenericOptions options;
    options.seed = seed;
    runs.push_back(build_generic_k1(200, options));
    const auto& g = runs.back();
    const std::string tag = "seed model " + std::to_string(seed) + ": ";
    if (!g.defects.empty()) out.fail(tag + std::to_string(g.defects.size()) + " defects");
    if (g.report.failed("nonoise.i")) out.fail(tag + "nonoise (i) fails");
    if (g.report.failed("generic.free_over_minimal")) out.fail(tag + "composed witness fails");
    if (!g.report.passed()) out.fail(tag + "report fails " + json(g.report.failed_ids()).dump());
  }
  const auto am = saturation_arena(runs[0].approx, 3);
  const auto an = saturation_arena(runs[1].approx, 3);
  if (!am || !an) {
    out.fail("no saturation arena at depth 3");
  } else if (!back_and_forth_check(runs[0].approx.last(), runs[1].approx.last(), 3, *am, *an)) {
    out.fail("back-and-forth fails at depth 3");
  }
  if (out.pass)
    out.detail = "tops of " + std::to_string(runs[0].approx.last().size()) + " and " +
                 std::to_string(runs[1].approx.last().size()) + " elements";
  return out;
}

// ---- 8: good sequences ----------------------------------------------------

Outcome good_sequences() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t k = 1 + seed % 4;
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    const auto g = make_good_chain(seed, k);
    if (!check_good_sequence(g).passed()) {
      out.fail(tag + "chain is not good");
      continue;
    }
    try {
      const auto l = label_good_sequence(g);
      if (!l.report.passed()) out.fail(tag + "label report fails");
      if (!check_Kminus1(l.labeled).passed()) out.fail(tag + "labelled structure fails");
      const auto to_labeled = inclusion_embedding(g.chain.back(), l.labeled);
      if (!to_labeled) {
        out.fail(tag + "top does not embed");
        continue;
      }
      std::vector<K1Embedding> into(k + 1);
      into[k] = *to_labeled;
      for (std::size_t n = k; n-- > 0;) into[n] = compose(g.links[n].e, into[n + 1]);
      for (std::size_t n = 0; n < k; ++n)
        if (l.labeled.value(l.c, static_cast<int>(n)) != into[n + 1].apply(g.b[n])) out.fail(tag + "F_n(c) != b_n");
      if (l.over_chain.size() != k + 1) out.fail(tag + "missing witnesses");
      for (std::size_t i = 0; i < l.over_chain.size() && i <= k; ++i)
        if (!check_free_extension(g.chain[i], l.labeled, into[i], l.over_chain[i]).passed())
          out.fail(tag + "witness over N_" + std::to_string(i) + " fails");
    } catch (const Error& e) {
      out.fail(tag + e.what());
    }
  }
  if (out.pass) out.detail = "20 chains";
  return out;
}

// ---- 9: k-disjoint survey -------------------------------------------------

Outcome survey_matches_oracle() {
  Outcome out;
  SurveyOptions options;
  options.oracle = true;
  const auto s = survey_k_disjoint_ap(1, 2, 3, 20, options);
  if (!s.report.passed()) out.fail("survey report fails " + json(s.report.failed_ids()).dump());
  if (survey_csv(s.rows) != survey_csv(s.oracle_rows)) out.fail("table differs from the oracle table");
  std::size_t configs = 0, success = 0;
  for (const auto& row : s.rows) {
    configs += row.configs;
    success += row.success;
  }
  if (success == 0) out.fail("no successes to check");
  if (out.pass)
    out.detail = std::to_string(s.rows.size()) + " shapes, " + std::to_string(configs) + " configurations, " +
                 std::to_string(success) + " amalgams";
  return out;
}

// ---- 10: determinism ------------------------------------------------------

std::pair<int, std::string> run(const std::string& args) {
  const std::string cmd = "\"" + cli_path + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string text;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

Outcome determinism() {
  Outcome out;
  if (cli_path.empty()) {
    out.fail("no --cli given");
    return out;
  }
  const std::vector<std::string> commands = {
      "check --class k1 minimal.json",
      "check --class k1 presentation.json",
      "check --class free pair.json",
      "check --class kr0 kr_member.json",
      "generic --steps 40 --seed 9",
      "amalgamate --class k1 triple.json",
      "amalgamate --class kr0 kr_config.json",
      "label chain.json",
      "survey --r 1 --k 2 --bound 3 --seed 1",
      "ba pushout pushout.json",
      "ba independent independent.json",
      "ba basis basis.json",
      "ba rebase rebase.json",
      "oracle ba --cap 50 --seed 7",
      "oracle survey --r 1 --k 2 --bound 3",
      "oracle amalgam triple.json",
  };
  for (const auto& c : commands) {
    const auto first = run(c + " --format json");
    const auto second = run(c + " --format json");
    if (first.first != second.first || first.second != second.second) out.fail("differs between runs: " + c);
    if (first.first == 2 || first.first < 0) out.fail("usage failure: " + c + ": " + first.second.substr(0, 200));
    try {
      const auto j = json::parse(first.second);
      if (!j.contains("seed") || !j.at("report").contains("pass")) out.fail("report lacks seed or verdict: " + c);
    } catch (const json::exception&) {
      out.fail("not json: " + c);
    }
  }
  if (out.pass) out.detail = std::to_string(commands.size()) + " commands run twice";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> body;
};

}  // namespace

int main(int argc, char** argv) {
  setenv("FRAISSE_FIXTURES", FRAISSE_FIXTURES_DIR, 0);
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) cli_path = argv[++i];
    else if (a == "--only" && i + 1 < argc) only.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--cli PATH] [--only N]...\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "pushout laws", 60, pushout_laws},
      {2, "independence vs polynomial definition", 30, independence_agrees},
      {3, "chained independence", 30, chained_independence},
      {4, "bases through an element and rebasing", 60, bases_and_rebasing},
      {5, "K1 membership, freeness and mutants", 300, k1_membership},
      {6, "free amalgamation", 600, free_amalgamation},
      {7, "generic model", 300, generic_model},
      {8, "good sequences", 120, good_sequences},
      {9, "k-disjoint survey vs oracle", 600, survey_matches_oracle},
      {10, "determinism", 600, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) o.fail("took " + std::to_string(secs) + "s, limit " + std::to_string(c.limit_s) + "s");
    all = all && o.pass;
    std::printf("criterion %2d %-40s %s (%.1fs) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
