#include "fraisse/k1_checks.hpp"

#include <algorithm>
#include <bit>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

namespace {

using nlohmann::json;

bool power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

std::vector<AtomSet> designated_singletons(const K1Structure& m) {
  std::vector<AtomSet> out;
  for (std::size_t i : m.p1.designated().indices()) out.push_back(AtomSet::single(m.atom_count(), i));
  return out;
}

std::vector<AtomSet> level_values(const K1Structure& m, int lo, int hi) {
  std::vector<AtomSet> out;
  for (ElemId c : m.p2) {
    auto it = m.f.find(c);
    if (it == m.f.end()) continue;
    for (int n = lo; n < hi && static_cast<std::size_t>(n) < it->second.size(); ++n)
      out.push_back(it->second[static_cast<std::size_t>(n)].resized(m.atom_count()));
  }
  return out;
}

json violation_json(const IndependenceViolation& v) { return {{"signs", v.signs}, {"base_block", v.base_block}}; }

}  // namespace

Report check_Kminus1(const K1Structure& m) {
  Report r;
  const std::size_t w = m.atom_count();
  const int big_n = m.trunc_n;

  {
    std::set<ElemId> seen;
    std::optional<ElemId> dup;
    for (const auto* ids : {&m.p0, &m.p2})
      for (ElemId e : *ids)
        if (!seen.insert(e).second && !dup) dup = e;
    r.add("kminus1.1", !dup, dup ? "id " + std::to_string(*dup) + " repeated" : "", dup ? json(*dup) : json());
  }
  {
    std::optional<ElemId> bad;
    for (const auto& [a, g] : m.g1)
      if (g.width() != w && !bad) bad = a;
    r.add("kminus1.2", w >= 1 && !bad, bad ? "G1 value of " + std::to_string(*bad) + " has the wrong width" : "",
          bad ? json(*bad) : json());
  }
  {
    std::optional<ElemId> bad;
    for (ElemId a : m.p0) {
      auto it = m.g1.find(a);
      if ((it == m.g1.end() || it->second.resized(w).count() != 1) && !bad) bad = a;
    }
    r.add("kminus1.3", !bad, bad ? "G1(" + std::to_string(*bad) + ") is not an atom" : "", bad ? json(*bad) : json());
  }
  {
    std::optional<std::size_t> bad;
    for (std::size_t i : m.p1.designated().indices()) {
      bool hit = false;
      for (ElemId a : m.p0) {
        auto it = m.g1.find(a);
        if (it != m.g1.end() && it->second.resized(w) == AtomSet::single(w, i)) hit = true;
      }
      if (!hit && !bad) bad = i;
    }
    r.add("kminus1.4", !bad,
          bad ? "designated atom " + std::to_string(*bad) + " has the same trace as 0" : "", bad ? json(*bad) : json());
  }
  {
    std::optional<ElemId> bad;
    for (ElemId a : m.p0) {
      auto it = m.g1.find(a);
      if (it == m.g1.end()) continue;
      const AtomSet g = it->second.resized(w);
      if (g.count() != 1) continue;
      if ((!m.p1.designated().test(g.next()) || m.trace(g) != std::set<ElemId>{a}) && !bad) bad = a;
    }
    r.add("kminus1.5", !bad, bad ? "R(G1(" + std::to_string(*bad) + ")) is not {a}" : "", bad ? json(*bad) : json());
  }
  {
    std::optional<ElemId> bad;
    for (ElemId c : m.p2) {
      auto it = m.f.find(c);
      if ((it == m.f.end() || it->second.size() != static_cast<std::size_t>(big_n)) && !bad) bad = c;
    }
    r.add("kminus1.6", !bad, bad ? "row of " + std::to_string(*bad) + " does not have N values" : "",
          bad ? json(*bad) : json());
  }
  {
    std::optional<ElemId> bad;
    for (const auto& [c, row] : m.f) {
      const bool foreign = !std::binary_search(m.p2.begin(), m.p2.end(), c);
      const bool wide = std::any_of(row.begin(), row.end(), [&](const AtomSet& x) { return x.width() != w; });
      if ((foreign || wide) && !bad) bad = c;
    }
    r.add("kminus1.7", !bad, bad ? "row keyed by " + std::to_string(*bad) + " is malformed" : "",
          bad ? json(*bad) : json());
  }
  {
    std::optional<ElemId> bad;
    for (ElemId c : m.p2) {
      auto it = m.f.find(c);
      if (it == m.f.end() || it->second.size() < static_cast<std::size_t>(big_n)) continue;
      if (it->second[static_cast<std::size_t>(big_n - 1)].resized(w).intersects(m.p1.designated()) && !bad) bad = c;
    }
    r.add("kminus1.8", !bad, bad ? "F_{N-1}(" + std::to_string(*bad) + ") lies above a designated atom" : "",
          bad ? json(*bad) : json());
  }
  {
    const auto sub = Subalgebra::generated_by(w, m.generators());
    const bool ok = sub.blocks().size() == w;
    json wit;
    if (!ok)
      for (const auto& b : sub.blocks())
        if (b.count() > 1) {
          wit = b;
          break;
        }
    r.add("kminus1.9", ok, ok ? "" : "generators do not separate the atoms", wit);
  }
  return r;
}

Report check_K1(const K1Structure& m, const K1Witness& wit) {
  Report r;
  const std::size_t w = m.atom_count();
  const int big_n = m.trunc_n;
  const AtomSet bstar = m.b_star();

  r.add("k1.1", wit.b_star == bstar, wit.b_star == bstar ? "" : "b* is not the join of the designated atoms",
        wit.b_star.width() == w ? json((wit.b_star ^ bstar)) : json());

  const bool shape_ok = wit.n_star >= 0 && wit.n_star < big_n &&
                        wit.chain.size() == static_cast<std::size_t>(big_n - wit.n_star + 1) &&
                        std::all_of(wit.chain.begin(), wit.chain.end(), [&](const Subalgebra& s) { return s.atom_count() == w; });
  bool increasing = shape_ok;
  std::optional<std::size_t> bad_step;
  for (std::size_t i = 0; shape_ok && i + 1 < wit.chain.size(); ++i)
    for (const auto& b : wit.chain[i].blocks())
      if (!wit.chain[i + 1].contains(b)) {
        increasing = false;
        if (!bad_step) bad_step = i;
      }
  r.add("k1.2", shape_ok && increasing,
        !shape_ok ? "chain has the wrong length or width" : (increasing ? "" : "chain is not increasing"),
        bad_step ? json(*bad_step) : json());
  if (!shape_ok) return r;

  const Subalgebra& base = wit.chain.front();
  {
    auto gens = designated_singletons(m);
    bool contains_p4 = std::all_of(gens.begin(), gens.end(), [&](const AtomSet& g) { return base.contains(g); });
    auto heads = level_values(m, 0, wit.n_star);
    gens.insert(gens.end(), heads.begin(), heads.end());
    const bool generated = base.is_generated_by(gens);
    std::size_t free_blocks = 0;
    for (const auto& b : base.blocks())
      if (!b.is_subset_of(bstar)) ++free_blocks;
    const bool ok = contains_p4 && generated && power_of_two(free_blocks);
    std::string why = !contains_p4 ? "B_{n*} misses P4"
                      : !generated ? "B_{n*} is not generated by P4 and the heads"
                      : !ok        ? "B_{n*}/P4 has " + std::to_string(free_blocks) + " atoms"
                                   : "";
    r.add("k1.3", ok, why, json(free_blocks));
  }
  {
    const bool ok = wit.chain.back() == Subalgebra::whole(w);
    r.add("k1.4", ok, ok ? "" : "B_N is not all of P1");
  }
  {
    std::optional<ElemId> bad;
    json viol;
    for (ElemId c : m.p2) {
      auto it = m.f.find(c);
      if (it == m.f.end()) continue;
      std::vector<AtomSet> row;
      for (const auto& x : it->second) row.push_back(x.resized(w));
      std::set<AtomSet> distinct(row.begin(), row.end());
      auto v = find_independence_violation(w, row, {}, PrincipalIdeal::zero(w));
      if ((distinct.size() != row.size() || v) && !bad) {
        bad = c;
        if (v) viol = violation_json(*v);
      }
    }
    r.add("k1.5", !bad, bad ? "row of " + std::to_string(*bad) + " repeats or is dependent" : "",
          bad ? json{{"c", *bad}, {"violation", viol}} : json());
  }
  {
    const auto tails = level_values(m, wit.n_star, big_n);
    const std::set<AtomSet> distinct(tails.begin(), tails.end());
    const bool disjoint = std::none_of(tails.begin(), tails.end(), [&](const AtomSet& t) { return t.intersects(bstar); });
    auto v = find_independence_violation(w, tails, base.blocks(), PrincipalIdeal{bstar});
    const bool ok = distinct.size() == tails.size() && disjoint && !v;
    std::string why = distinct.size() != tails.size() ? "tail values repeat"
                      : !disjoint                     ? "a tail value meets b*"
                      : v                             ? "tails are not free over B_{n*}"
                                                      : "";
    r.add("k1.6", ok, why, v ? violation_json(*v) : json());
  }
  {
    std::optional<std::size_t> bad;
    for (std::size_t i = 1; i < wit.chain.size(); ++i) {
      auto gens = base.blocks();
      auto tails = level_values(m, wit.n_star, wit.n_star + static_cast<int>(i));
      gens.insert(gens.end(), tails.begin(), tails.end());
      if (!bad && !wit.chain[i].is_generated_by(gens)) bad = i;
    }
    r.add("k1.7", !bad, bad ? "B_{n*+" + std::to_string(*bad) + "} is not generated by B_{n*} and the tails" : "",
          bad ? json(*bad) : json());
  }
  return r;
}

Report check_free_extension(const K1Structure& m1, const K1Structure& m2, const K1Embedding& e,
                            const FreeExtensionWitness& wit) {
  Report r;
  const std::size_t w = m2.atom_count();
  const std::vector<AtomSet> old = e.p1.apply_all(m1.generators());
  const Subalgebra image = Subalgebra::generated_by(w, old);
  const AtomSet bstar = m2.b_star();
  std::vector<AtomSet> ii;
  for (const auto& x : wit.i) ii.push_back(x.resized(w));

  {
    auto gens = ii;
    gens.insert(gens.end(), old.begin(), old.end());
    for (const auto& d : designated_singletons(m2)) gens.push_back(d);
    const bool ok = generated_atom_count(w, gens) == w;
    r.add("free.generates", ok, ok ? "" : "I, the image and P4 do not generate P1");
  }
  {
    auto v = find_independence_violation(w, ii, old, PrincipalIdeal{bstar});
    r.add("free.independent", !v, v ? "I is not independent from the image modulo P4" : "", v ? violation_json(*v) : json());
  }
  {
    std::optional<std::size_t> bad;
    for (std::size_t k = 0; k < ii.size(); ++k)
      if ((image.contains(ii[k]) || ii[k].is_subset_of(bstar)) && !bad) bad = k;
    r.add("free.avoids", !bad, bad ? "I meets the image or P4" : "", bad ? json(*bad) : json());
  }
  std::set<ElemId> image_p2;
  for (const auto& [c, d] : e.p2) image_p2.insert(d);
  std::set<ElemId> fresh;
  for (ElemId c : m2.p2)
    if (!image_p2.contains(c)) fresh.insert(c);
  {
    std::set<ElemId> dom;
    for (const auto& [c, n] : wit.h) dom.insert(c);
    r.add("free.h_domain", dom == fresh, dom == fresh ? "" : "H is not defined exactly on the new P2 elements");
  }
  {
    const std::set<AtomSet> in_i(ii.begin(), ii.end());
    std::optional<ElemId> bad;
    for (const auto& [c, hc] : wit.h) {
      auto it = m2.f.find(c);
      if (it == m2.f.end()) {
        if (!bad) bad = c;
        continue;
      }
      std::set<AtomSet> seen;
      for (std::size_t n = static_cast<std::size_t>(std::max(hc, 0)); n < it->second.size(); ++n) {
        const AtomSet x = it->second[n].resized(w);
        if ((!in_i.contains(x) || !seen.insert(x).second) && !bad) bad = c;
      }
    }
    r.add("free.tails", !bad, bad ? "tail of " + std::to_string(*bad) + " is not a run of distinct members of I" : "",
          bad ? json(*bad) : json());
  }
  return r;
}

FreeExtensionWitness extract_free_witness(const K1Structure& m0, const K1Structure& m1, const K1Embedding& e,
                                          int n_star) {
  const std::size_t w = m1.atom_count();
  const Subalgebra b0 = standard_head(m0, n_star);
  const Subalgebra b1 = standard_head(m1, n_star);
  const AtomSet bstar0 = m0.b_star();
  const AtomSet bstar1 = m1.b_star();
  std::vector<std::vector<AtomSet>> groups;
  for (const auto& beta : b0.blocks()) {
    if (beta.is_subset_of(bstar0)) continue;
    const AtomSet super = e.apply(beta) - bstar1;
    std::vector<AtomSet> inside;
    for (const auto& gamma : b1.blocks()) {
      if (gamma.is_subset_of(super)) {
        inside.push_back(gamma);
      } else if (gamma.intersects(super)) {
        throw Error(ErrorCode::kWitnessAlignmentFailed, "a block of B_{n*} straddles the image of a smaller block");
      }
    }
    groups.push_back(std::move(inside));
  }
  FreeExtensionWitness out;
  if (!groups.empty()) {
    const std::size_t size = groups.front().size();
    for (const auto& g : groups)
      if (g.size() != size || !power_of_two(size))
        throw Error(ErrorCode::kWitnessAlignmentFailed, "new heads split the old blocks unevenly");
    const int bits = std::countr_zero(size);
    for (int bit = 0; bit < bits; ++bit) {
      AtomSet x(w);
      for (const auto& g : groups)
        for (std::size_t j = 0; j < g.size(); ++j)
          if (j >> bit & 1) x |= g[j];
      out.i.push_back(std::move(x));
    }
  }
  std::set<ElemId> image_p2;
  for (const auto& [c, d] : e.p2) image_p2.insert(d);
  for (ElemId c : m1.p2) {
    if (image_p2.contains(c)) continue;
    out.h[c] = n_star;
    const auto& row = m1.f.at(c);
    for (std::size_t n = static_cast<std::size_t>(n_star); n < row.size(); ++n) out.i.push_back(row[n]);
  }
  return out;
}

K1Embedding embedding_from_minimal(const K1Structure& m) {
  std::string why;
  auto e = derive_embedding(minimal_model(m.trunc_n), m, {}, {}, &why);
  if (!e) throw Error(ErrorCode::kInvalidEmbedding, "minimal model does not embed: " + why);
  return *e;
}

FreeExtensionWitness free_over_minimal(const K1Structure& m, int n_star) {
  return extract_free_witness(minimal_model(m.trunc_n), m, embedding_from_minimal(m), n_star);
}

FreeExtensionWitness compose_free_witnesses(const FreeExtensionWitness& w12, const FreeExtensionWitness& w23,
                                            const K1Embedding& e23) {
  FreeExtensionWitness out;
  std::set<AtomSet> seen;
  auto push = [&](const AtomSet& x) {
    if (seen.insert(x).second) out.i.push_back(x);
  };
  for (const auto& x : w12.i) push(e23.apply(x));
  for (const auto& x : w23.i) push(x);
  for (const auto& [c, n] : w12.h) out.h[e23.p2.at(c)] = n;
  for (const auto& [c, n] : w23.h)
    if (!out.h.emplace(c, n).second)
      throw Error(ErrorCode::kOverlappingH, "H is defined twice on " + std::to_string(c));
  return out;
}

ChainUnion union_of_chain(const std::vector<K1Structure>& chain, const std::vector<ChainLink>& links) {
  if (chain.empty() || links.size() + 1 != chain.size())
    throw Error(ErrorCode::kInvalidArgument, "a chain of k+1 structures needs k links");
  ChainUnion u;
  u.top = chain.back();
  const std::size_t k = links.size();
  u.into_top.resize(k + 1);
  u.witnesses.resize(k + 1);
  u.into_top[k] = *inclusion_embedding(chain.back(), chain.back());
  for (std::size_t j = k; j-- > 0;) {
    u.into_top[j] = compose(links[j].e, u.into_top[j + 1]);
    u.witnesses[j] = compose_free_witnesses(links[j].w, u.witnesses[j + 1], u.into_top[j + 1]);
  }
  return u;
}

PresentationFreeWitness presentation_free_witness(const K1Presentation& small, const K1Presentation& big,
                                                  const std::map<ElemId, ElemId>& p2) {
  (void)small;
  std::set<ElemId> image;
  for (const auto& [c, d] : p2) image.insert(d);
  PresentationFreeWitness w;
  for (ElemId c : big.p2) {
    if (image.contains(c)) continue;
    w.h[c] = 0;
    for (int n = 0; n < big.trunc_n; ++n) w.i.insert({c, n});
  }
  return w;
}

Report check_presentation_free_extension(const K1Presentation& small, const K1Presentation& big,
                                         const std::map<ElemId, ElemId>& p0, const std::map<ElemId, ElemId>& p2,
                                         const PresentationFreeWitness& w) {
  Report r;
  if (!is_presentation_embedding(small, big, p0, p2)) {
    r.add("free.embedding", false, "the id maps are not a presentation embedding");
    return r;
  }
  std::set<ElemId> image;
  for (const auto& [c, d] : p2) image.insert(d);
  std::set<ElemId> fresh;
  for (ElemId c : big.p2)
    if (!image.contains(c)) fresh.insert(c);
  // Coordinates of new P2 elements are free generators over the old algebra
  // and P4, so independence and avoidance reduce to freshness.
  std::optional<std::pair<ElemId, int>> stale;
  for (const auto& x : w.i)
    if ((!fresh.contains(x.first) || x.second < 0 || x.second >= big.trunc_n) && !stale) stale = x;
  r.add("free.independent", !stale, stale ? "I uses a coordinate of the smaller presentation" : "",
        stale ? json{stale->first, stale->second} : json());
  r.add("free.avoids", !stale, stale ? "I meets the image" : "");
  std::optional<std::pair<ElemId, int>> missing;
  for (ElemId c : fresh)
    for (int n = 0; n < big.trunc_n; ++n)
      if (!w.i.contains({c, n}) && !missing) missing = std::make_pair(c, n);
  r.add("free.generates", !missing, missing ? "a new coordinate is not generated" : "",
        missing ? json{missing->first, missing->second} : json());
  std::set<ElemId> dom;
  for (const auto& [c, n] : w.h) dom.insert(c);
  r.add("free.h_domain", dom == fresh, dom == fresh ? "" : "H is not defined exactly on the new P2 elements");
  std::optional<ElemId> bad;
  for (const auto& [c, hc] : w.h)
    for (int n = std::max(hc, 0); n < big.trunc_n; ++n)
      if (!w.i.contains({c, n}) && !bad) bad = c;
  r.add("free.tails", !bad, bad ? "tail of " + std::to_string(*bad) + " is not in I" : "", bad ? json(*bad) : json());
  return r;
}

PresentationFreeWitness compose_presentation_witnesses(const PresentationFreeWitness& w12,
                                                       const PresentationFreeWitness& w23,
                                                       const std::map<ElemId, ElemId>& p2_23) {
  PresentationFreeWitness out;
  for (const auto& [c, n] : w12.i) out.i.insert({p2_23.at(c), n});
  out.i.insert(w23.i.begin(), w23.i.end());
  for (const auto& [c, n] : w12.h) out.h[p2_23.at(c)] = n;
  for (const auto& [c, n] : w23.h)
    if (!out.h.emplace(c, n).second)
      throw Error(ErrorCode::kOverlappingH, "H is defined twice on " + std::to_string(c));
  return out;
}

FreeExtensionWitness explicit_witness(const K1Presentation& big, const PresentationFreeWitness& w) {
  const K1Structure m = materialize(big);
  FreeExtensionWitness out;
  for (const auto& [c, n] : w.i) out.i.push_back(m.value(c, n));
  out.h = w.h;
  return out;
}

namespace {

struct Head {
  ElemId c;
  int n;
  std::set<ElemId> trace;
};

Report nonoise_from_heads(const std::vector<Head>& heads, std::size_t p0_size, std::size_t floor) {
  Report r;
  std::optional<std::pair<std::size_t, std::size_t>> clash;
  for (std::size_t x = 0; x < heads.size() && !clash; ++x)
    for (std::size_t y = x + 1; y < heads.size() && !clash; ++y)
      if (heads[x].trace == heads[y].trace) clash = std::make_pair(x, y);
  r.add("nonoise.i", !clash, clash ? "two heads share a trace" : "",
        clash ? json{{"first", {heads[clash->first].c, heads[clash->first].n}},
                     {"second", {heads[clash->second].c, heads[clash->second].n}}}
              : json());
  r.add("nonoise.ii", true, "atom-canonical representation");
  std::optional<std::size_t> thin;
  for (std::size_t x = 0; x < heads.size(); ++x) {
    const std::size_t t = heads[x].trace.size();
    if ((t < floor || p0_size - t < floor) && !thin) thin = x;
  }
  r.add("nonoise.iii", !thin, thin ? "a head trace or its complement is below the floor" : "",
        thin ? json{heads[*thin].c, heads[*thin].n} : json());
  return r;
}

}  // namespace

Report nonoise_check(const K1Presentation& p, const NonoiseOptions& options) {
  std::vector<Head> heads;
  for (ElemId c : p.p2) {
    if (options.core_p2 && !options.core_p2->contains(c)) continue;
    for (int n = 0; n < p.n_star; ++n) {
      std::set<ElemId> t;
      for (ElemId a : p.p0)
        if (p.incident(a, c, n)) t.insert(a);
      heads.push_back({c, n, std::move(t)});
    }
  }
  return nonoise_from_heads(heads, p.p0.size(), options.floor);
}

Report nonoise_check(const K1Structure& m, int n_star, const NonoiseOptions& options) {
  std::vector<Head> heads;
  for (ElemId c : m.p2) {
    if (options.core_p2 && !options.core_p2->contains(c)) continue;
    for (int n = 0; n < n_star; ++n) heads.push_back({c, n, m.trace(m.value(c, n))});
  }
  return nonoise_from_heads(heads, m.p0.size(), options.floor);
}

}  // namespace fraisse
