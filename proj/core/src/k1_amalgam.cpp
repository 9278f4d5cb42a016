#include "fraisse/k1_amalgam.hpp"

#include <algorithm>

#include "fraisse/engine.hpp"
#include "fraisse/error.hpp"

namespace fraisse {

namespace {

K1Embedding require_inclusion(const K1Structure& small, const K1Structure& big, const char* what) {
  std::string why;
  auto e = inclusion_embedding(small, big, &why);
  if (!e) throw Error(ErrorCode::kInvalidEmbedding, std::string(what) + ": " + why);
  return *e;
}

std::vector<ElemId> ids_of(const K1Structure& m) {
  std::vector<ElemId> out(m.p0.begin(), m.p0.end());
  out.insert(out.end(), m.p2.begin(), m.p2.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Ids of `big` kept where shared with `small`, the rest numbered from `next`.
std::map<ElemId, ElemId> place_ids(const std::vector<ElemId>& small, const std::vector<ElemId>& big, ElemId next) {
  std::map<ElemId, ElemId> out;
  for (ElemId e : big) {
    if (std::binary_search(small.begin(), small.end(), e))
      out[e] = e;
    else
      out[e] = next++;
  }
  return out;
}

std::vector<AtomSet> mapped_generators(const K1Structure& m, const K1Embedding& e) {
  return e.p1.apply_all(m.generators());
}

}  // namespace

std::optional<int> least_n_star(const K1Structure& m) {
  for (int n = 0; n < m.trunc_n; ++n)
    if (check_K1(m, standard_witness(m, n)).passed()) return n;
  return std::nullopt;
}

FreeAmalgamResult amalgamate_free(const K1Structure& m1, const K1Structure& n1, const K1Structure& n2,
                                  std::optional<int> n_star) {
  if (m1.trunc_n != n1.trunc_n || n1.trunc_n != n2.trunc_n)
    throw Error(ErrorCode::kInvalidArgument, "structures have different truncation");
  const K1Embedding e1 = require_inclusion(n1, m1, "N1 is not a substructure of M1");
  const K1Embedding e2 = require_inclusion(n1, n2, "N1 is not a substructure of N2");

  int ns = 0;
  if (n_star) {
    ns = *n_star;
  } else {
    for (const K1Structure* s : {&m1, &n1, &n2}) {
      auto least = least_n_star(*s);
      if (!least) throw Error(ErrorCode::kWitnessAlignmentFailed, "no standard witness for an input");
      ns = std::max(ns, *least);
    }
  }
  for (const K1Structure* s : {&m1, &n1, &n2})
    if (!check_K1(*s, standard_witness(*s, ns)).passed())
      throw Error(ErrorCode::kWitnessAlignmentFailed, "standard witness fails at n* = " + std::to_string(ns));
  const FreeExtensionWitness w_m1 = extract_free_witness(n1, m1, e1, ns);
  const FreeExtensionWitness w_n2 = extract_free_witness(n1, n2, e2, ns);

  // Step 1: one fresh designated atom per new designated atom of N2, sitting
  // over the lowest free atom of M1 that no new generator of M1 touches.
  const std::size_t w1 = m1.atom_count();
  const std::size_t wn1 = n1.atom_count();
  const std::size_t wn2 = n2.atom_count();
  AtomSet old_designated(wn2);
  for (std::size_t d : n1.b_star().indices()) old_designated |= e2.p1.image[d];
  const std::vector<std::size_t> nu = (n2.b_star() - old_designated).indices();
  const std::size_t l_count = nu.size();
  AtomSet avoid(w1);
  for (const auto& x : w_m1.i) avoid |= x.resized(w1);
  std::vector<std::size_t> beta(l_count), d_atom(l_count);
  for (std::size_t l = 0; l < l_count; ++l) {
    std::size_t b = 0;
    while (b < wn1 && !e2.p1.image[b].test(nu[l])) ++b;
    beta[l] = b;
    const AtomSet room = e1.p1.image[b] - m1.b_star() - avoid;
    if (room.none())
      throw Error(ErrorCode::kUltrafilterChoiceFailed, "no free atom of M1 under N1 atom " + std::to_string(b));
    d_atom[l] = room.next();
  }
  const std::size_t wb = w1 + l_count;
  AtomSet fresh(wb);
  for (std::size_t l = 0; l < l_count; ++l) fresh.set(w1 + l);
  BAEmbedding g{wb, {}};
  for (std::size_t i = 0; i < w1; ++i) {
    AtomSet img = AtomSet::single(wb, i);
    for (std::size_t l = 0; l < l_count; ++l)
      if (d_atom[l] == i) img.set(w1 + l);
    g.image.push_back(std::move(img));
  }
  AtomSet b1_designated = m1.b_star().resized(wb) | fresh;

  // Step 2: the common part, N1's algebra with the fresh atoms split off.
  BAEmbedding c_to_b1{wb, {}}, c_to_n2{wn2, {}};
  AtomSet nu_mask = AtomSet::from_indices(wn2, nu);
  for (std::size_t b = 0; b < wn1; ++b) {
    c_to_b1.image.push_back(g.apply(e1.p1.image[b]) - fresh);
    c_to_n2.image.push_back(e2.p1.image[b] - nu_mask);
  }
  for (std::size_t l = 0; l < l_count; ++l) {
    c_to_b1.image.push_back(AtomSet::single(wb, w1 + l));
    c_to_n2.image.push_back(AtomSet::single(wn2, nu[l]));
  }
  c_to_b1.validate();
  c_to_n2.validate();

  // Step 3: pushout, then cut every designated atom beyond N1 down to one
  // pair by dropping the pairs under members of I2 that split it.
  const Pushout po = pushout(wb, wn2, c_to_b1, c_to_n2);
  const std::size_t wp = po.atom_pairs.size();
  AtomSet n1_designated_in_b1(wb);
  for (std::size_t d : n1.b_star().indices()) n1_designated_in_b1 |= g.apply(e1.p1.image[d]);
  std::vector<AtomSet> i2;
  for (const auto& x : w_n2.i) i2.push_back(x.resized(wn2));
  std::vector<bool> keep(wp, true);
  for (std::size_t alpha : (b1_designated - n1_designated_in_b1).indices()) {
    std::vector<std::size_t> y;
    for (std::size_t k = 0; k < wp; ++k)
      if (po.atom_pairs[k].first == alpha) y.push_back(k);
    for (const auto& b : i2) {
      std::vector<std::size_t> inside;
      for (std::size_t k : y)
        if (b.test(po.atom_pairs[k].second)) inside.push_back(k);
      if (!inside.empty() && inside.size() < y.size())
        for (std::size_t k : inside) keep[k] = false;
    }
    std::size_t left = 0;
    for (std::size_t k : y) left += keep[k] ? 1 : 0;
    if (left != 1)
      throw Error(ErrorCode::kCollapseDetected,
                  "designated atom " + std::to_string(alpha) + " keeps " + std::to_string(left) + " pairs");
  }
  std::vector<std::size_t> survivor_index(wp, SIZE_MAX);
  std::size_t w2 = 0;
  for (std::size_t k = 0; k < wp; ++k)
    if (keep[k]) survivor_index[k] = w2++;
  auto project = [&](const AtomSet& x) {
    AtomSet out(w2);
    for (std::size_t k : x.indices())
      if (keep[k]) out.set(survivor_index[k]);
    return out;
  };
  auto from_m1 = [&](const AtomSet& x) { return project(po.from_a.apply(g.apply(x.resized(w1)))); };
  auto from_n2 = [&](const AtomSet& x) { return project(po.from_b.apply(x.resized(wn2))); };
  for (std::size_t a = 0; a < wb; ++a)
    if (project(po.from_a.image[a]).none())
      throw Error(ErrorCode::kCollapseDetected, "atom " + std::to_string(a) + " of the extended M1 algebra collapsed");
  for (std::size_t a = 0; a < wn2; ++a)
    if (from_n2(AtomSet::single(wn2, a)).none())
      throw Error(ErrorCode::kCollapseDetected, "atom " + std::to_string(a) + " of N2 collapsed");
  for (const auto& b : i2)
    if (from_n2(b).none()) throw Error(ErrorCode::kCollapseDetected, "a member of I2 collapsed");

  // Step 4: rebuild the structure on the surviving pairs.
  FreeAmalgamResult r;
  r.n_star = ns;
  r.n2_ids = place_ids(ids_of(n1), ids_of(n2), m1.fresh_id());
  K1Structure& m2 = r.m2;
  m2.trunc_n = m1.trunc_n;
  AtomSet designated(w2);
  for (std::size_t k = 0; k < wp; ++k)
    if (keep[k] && b1_designated.test(po.atom_pairs[k].first)) {
      designated.set(survivor_index[k]);
      if (po.atom_pairs[k].first >= w1) r.fresh_atoms.push_back(survivor_index[k]);
    }
  m2.p1 = FiniteBooleanAlgebra(w2, designated);
  m2.p0 = m1.p0;
  m2.p2 = m1.p2;
  std::map<ElemId, ElemId> p0map, p2map;
  for (ElemId a : n2.p0) {
    p0map[a] = r.n2_ids.at(a);
    if (!std::binary_search(n1.p0.begin(), n1.p0.end(), a)) m2.p0.push_back(r.n2_ids.at(a));
  }
  for (ElemId c : n2.p2) {
    p2map[c] = r.n2_ids.at(c);
    if (!std::binary_search(n1.p2.begin(), n1.p2.end(), c)) m2.p2.push_back(r.n2_ids.at(c));
  }
  std::sort(m2.p0.begin(), m2.p0.end());
  std::sort(m2.p2.begin(), m2.p2.end());
  for (const auto& [a, x] : m1.g1) m2.g1[a] = from_m1(x);
  for (const auto& [a, x] : n2.g1) m2.g1.emplace(r.n2_ids.at(a), from_n2(x));
  for (const auto& [c, row] : m1.f)
    for (const auto& x : row) m2.f[c].push_back(from_m1(x));
  for (const auto& [c, row] : n2.f) {
    if (std::binary_search(n1.p2.begin(), n1.p2.end(), c)) continue;
    for (const auto& x : row) m2.f[r.n2_ids.at(c)].push_back(from_n2(x));
  }
  for (const auto& [label, x] : m1.p1.named()) m2.p1.name(label, from_m1(x));
  for (const auto& [label, x] : n2.p1.named())
    if (!m2.p1.named().contains(label)) m2.p1.name(label, from_n2(x));

  std::string why;
  auto m1_in = inclusion_embedding(m1, m2, &why);
  if (!m1_in) throw Error(ErrorCode::kCollapseDetected, "M1 does not embed: " + why);
  auto n2_in = derive_embedding(n2, m2, p0map, p2map, &why);
  if (!n2_in) throw Error(ErrorCode::kCollapseDetected, "N2 does not embed: " + why);
  r.m1_to_m2 = *m1_in;
  r.n2_to_m2 = *n2_in;

  std::set<AtomSet> seen;
  for (const auto& b : i2) {
    AtomSet x = from_n2(b);
    if (seen.insert(x).second) r.witness.i.push_back(std::move(x));
  }
  for (ElemId c : n2.p2)
    if (!std::binary_search(n1.p2.begin(), n1.p2.end(), c)) r.witness.h[r.n2_ids.at(c)] = ns;

  r.report.add("amalgam.kminus1", check_Kminus1(m2).passed());
  r.report.add("amalgam.k1", check_K1(m2, standard_witness(m2, ns)).passed());
  r.report.add("amalgam.m1_embeds", true);
  r.report.add("amalgam.n2_embeds", true);
  const K1Embedding via_m1 = compose(e1, r.m1_to_m2);
  const K1Embedding via_n2 = compose(e2, r.n2_to_m2);
  r.report.add("amalgam.over_n1", via_m1 == via_n2, via_m1 == via_n2 ? "" : "the two routes from N1 differ");
  {
    const Subalgebra s1 = Subalgebra::generated_by(w2, mapped_generators(m1, r.m1_to_m2));
    const Subalgebra s2 = Subalgebra::generated_by(w2, mapped_generators(n2, r.n2_to_m2));
    const Subalgebra s0 = Subalgebra::generated_by(w2, mapped_generators(n1, via_m1));
    std::vector<ElemId> left = ids_of(m1), right, both, base = ids_of(n1);
    for (const auto& [a, b] : r.n2_ids) right.push_back(b);
    std::sort(right.begin(), right.end());
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(both));
    const bool ok = intersect(s1, s2) == s0 && both == base;
    r.report.add("amalgam.disjoint", ok, ok ? "" : "the images of M1 and N2 meet outside N1");
  }
  {
    const bool ok = designated.count() == m1.b_star().count() + l_count && r.fresh_atoms.size() == l_count;
    r.report.add("amalgam.designated", ok, ok ? "" : "designated atoms are not those of M1 plus the fresh ones",
                 nlohmann::json{{"m1", m1.b_star().count()}, {"fresh", l_count}, {"m2", designated.count()}});
  }
  r.report.merge(check_free_extension(m1, m2, r.m1_to_m2, r.witness));
  return r;
}

DisjointAmalgamResult disjoint_amalgamate_k1(const K1Structure& m0, const K1Structure& m1, const K1Structure& m2) {
  FreeAmalgamResult a = amalgamate_free(m1, m0, m2);
  DisjointAmalgamResult r;
  r.m3 = std::move(a.m2);
  r.m1_to_m3 = std::move(a.m1_to_m2);
  r.m2_to_m3 = std::move(a.n2_to_m2);
  r.m2_ids = std::move(a.n2_ids);
  r.report = std::move(a.report);
  const std::size_t w = r.m3.atom_count();
  const K1Witness b1 = standard_witness(m1, a.n_star);
  const K1Witness b2 = standard_witness(m2, a.n_star);
  r.witness.n_star = a.n_star;
  r.witness.b_star = r.m3.b_star();
  for (std::size_t i = 0; i < b1.chain.size(); ++i) {
    std::vector<AtomSet> gens;
    for (const auto& b : b1.chain[i].blocks()) gens.push_back(r.m1_to_m3.apply(b));
    for (const auto& b : b2.chain[i].blocks()) gens.push_back(r.m2_to_m3.apply(b));
    r.witness.chain.push_back(Subalgebra::generated_by(w, gens));
  }
  const Report k1 = check_K1(r.m3, r.witness);
  r.report.add("amalgam.joined_witness", k1.passed(), k1.passed() ? "" : "joined chain fails check_K1",
               nlohmann::json(k1.failed_ids()));
  return r;
}

K1Presentation to_presentation(const K1Structure& m, int n_star) {
  K1Presentation p;
  p.trunc_n = m.trunc_n;
  p.n_star = n_star;
  p.p0 = m.p0;
  p.p2 = m.p2;
  for (ElemId c : m.p2) {
    auto& rows = p.trace[c];
    for (int n = 0; n < n_star; ++n) rows.push_back(m.trace(m.value(c, n)));
  }
  return p;
}

namespace {

Embedding identity_on(const FiniteStructure& m) { return Embedding{m.universe(), m.universe()}; }

}  // namespace

K1Presentation presentation_amalgam(const K1Presentation& m1, const K1Presentation& n1, const K1Presentation& n2) {
  if (m1.n_star != n1.n_star || n1.n_star != n2.n_star || m1.trunc_n != n1.trunc_n || n1.trunc_n != n2.trunc_n)
    throw Error(ErrorCode::kWitnessAlignmentFailed, "presentations use different n* or N");
  std::map<ElemId, ElemId> p0, p2;
  for (ElemId a : n1.p0) p0[a] = a;
  for (ElemId c : n1.p2) p2[c] = c;
  if (!is_presentation_embedding(n1, m1, p0, p2) || !is_presentation_embedding(n1, n2, p0, p2))
    throw Error(ErrorCode::kInvalidEmbedding, "N1 is not a sub-presentation of both sides");
  const FiniteStructure base = encode(n1);
  const Amalgam am = free_amalgam(encode(m1), encode(n2), identity_on(base), identity_on(base));
  return decode(am.d, m1.n_star);
}

std::vector<K1Presentation> completion_oracle(const K1Presentation& m1, const K1Presentation& n1,
                                              const K1Presentation& n2, std::size_t max_bits, std::size_t max_atoms) {
  const K1Presentation base = presentation_amalgam(m1, n1, n2);
  std::vector<ElemId> n1_ids(n1.p0.begin(), n1.p0.end());
  n1_ids.insert(n1_ids.end(), n1.p2.begin(), n1.p2.end());
  std::sort(n1_ids.begin(), n1_ids.end());
  std::vector<ElemId> n2_ids(n2.p0.begin(), n2.p0.end());
  n2_ids.insert(n2_ids.end(), n2.p2.begin(), n2.p2.end());
  std::sort(n2_ids.begin(), n2_ids.end());
  ElemId next = 0;
  for (const auto* v : {&m1.p0, &m1.p2})
    for (ElemId e : *v) next = std::max(next, e + 1);
  const auto ids = place_ids(n1_ids, n2_ids, next);

  auto outside = [](const std::vector<ElemId>& big, const std::vector<ElemId>& small) {
    std::vector<ElemId> out;
    std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
    return out;
  };
  std::vector<ElemId> new_p0, new_p2;
  for (ElemId a : outside(n2.p0, n1.p0)) new_p0.push_back(ids.at(a));
  for (ElemId c : outside(n2.p2, n1.p2)) new_p2.push_back(ids.at(c));
  struct Cell {
    ElemId a, c;
    int n;
  };
  std::vector<Cell> cells;
  for (int n = 0; n < base.n_star; ++n) {
    for (ElemId a : outside(m1.p0, n1.p0))
      for (ElemId c : new_p2) cells.push_back({a, c, n});
    for (ElemId a : new_p0)
      for (ElemId c : outside(m1.p2, n1.p2)) cells.push_back({a, c, n});
  }
  if (cells.size() > max_bits)
    throw Error(ErrorCode::kEnumerationOverflow, std::to_string(cells.size()) + " unknown incidences");
  if (base.coordinate_count() >= 16 || base.p0.size() + (std::size_t{1} << base.coordinate_count()) > max_atoms)
    throw Error(ErrorCode::kEnumerationOverflow, "candidates exceed the atom cap");

  const K1Structure x1 = materialize(m1);
  const K1Structure x2 = materialize(n2);
  std::map<ElemId, ElemId> p0map, p2map;
  for (ElemId a : n2.p0) p0map[a] = ids.at(a);
  for (ElemId c : n2.p2) p2map[c] = ids.at(c);
  std::vector<K1Presentation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    K1Presentation cand = base;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (mask >> k & 1) cand.trace[cells[k].c][static_cast<std::size_t>(cells[k].n)].insert(cells[k].a);
    const K1Structure x = materialize(cand);
    if (!check_Kminus1(x).passed() || !check_K1(x, standard_witness(x, cand.n_star)).passed()) continue;
    if (!inclusion_embedding(x1, x) || !derive_embedding(x2, x, p0map, p2map)) continue;
    out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace fraisse
