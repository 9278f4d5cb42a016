#include "fraisse/k1_structure.hpp"

#include <algorithm>

#include "fraisse/error.hpp"

namespace fraisse {

std::set<ElemId> K1Structure::trace(const AtomSet& b) const {
  std::set<ElemId> out;
  for (ElemId a : p0) {
    auto it = g1.find(a);
    if (it != g1.end() && it->second.resized(b.width()).is_subset_of(b)) out.insert(a);
  }
  return out;
}

std::vector<AtomSet> K1Structure::generators() const {
  const std::size_t w = atom_count();
  std::vector<AtomSet> out;
  for (std::size_t i : p1.designated().indices()) out.push_back(AtomSet::single(w, i));
  for (ElemId c : p2) {
    auto it = f.find(c);
    if (it == f.end()) continue;
    for (const auto& x : it->second) out.push_back(x.resized(w));
  }
  for (const auto& [label, x] : p1.named()) out.push_back(x.resized(w));
  return out;
}

ElemId K1Structure::fresh_id() const {
  ElemId next = 0;
  for (const auto* ids : {&p0, &p2})
    for (ElemId e : *ids) next = std::max(next, e + 1);
  return next;
}

K1Witness standard_witness(const K1Structure& m, int n_star) {
  const std::size_t w = m.atom_count();
  K1Witness out;
  out.n_star = n_star;
  out.b_star = m.b_star();
  std::vector<AtomSet> gens;
  for (std::size_t i : m.p1.designated().indices()) gens.push_back(AtomSet::single(w, i));
  auto add_level = [&](int k) {
    for (ElemId c : m.p2) {
      auto it = m.f.find(c);
      if (it != m.f.end() && static_cast<std::size_t>(k) < it->second.size()) gens.push_back(it->second[k].resized(w));
    }
  };
  for (int k = 0; k < n_star; ++k) add_level(k);
  for (int n = n_star; n <= m.trunc_n; ++n) {
    out.chain.push_back(Subalgebra::generated_by(w, gens));
    add_level(n);
  }
  return out;
}

Subalgebra standard_head(const K1Structure& m, int n_star) {
  const std::size_t w = m.atom_count();
  std::vector<AtomSet> gens;
  for (std::size_t i : m.p1.designated().indices()) gens.push_back(AtomSet::single(w, i));
  for (ElemId c : m.p2) {
    auto it = m.f.find(c);
    if (it == m.f.end()) continue;
    for (int k = 0; k < n_star && static_cast<std::size_t>(k) < it->second.size(); ++k)
      gens.push_back(it->second[static_cast<std::size_t>(k)].resized(w));
  }
  return Subalgebra::generated_by(w, gens);
}

K1Structure minimal_model(int trunc_n) {
  K1Structure m;
  m.trunc_n = trunc_n;
  m.p1 = FiniteBooleanAlgebra(1);
  return m;
}

bool K1Presentation::incident(ElemId a, ElemId c, int n) const {
  if (n >= n_star) return false;
  auto it = trace.find(c);
  return it != trace.end() && it->second.at(static_cast<std::size_t>(n)).contains(a);
}

void validate(const K1Presentation& p) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kInvalidArgument, "presentation: " + why); };
  if (p.trunc_n < 1) bad("N must be at least 1");
  if (p.n_star < 0 || p.n_star >= p.trunc_n) bad("n* must lie in [0, N)");
  if (!std::is_sorted(p.p0.begin(), p.p0.end()) || !std::is_sorted(p.p2.begin(), p.p2.end())) bad("ids must be sorted");
  if (std::adjacent_find(p.p0.begin(), p.p0.end()) != p.p0.end() ||
      std::adjacent_find(p.p2.begin(), p.p2.end()) != p.p2.end())
    bad("repeated id");
  const std::set<ElemId> zero(p.p0.begin(), p.p0.end());
  for (ElemId c : p.p2)
    if (zero.contains(c)) bad("id " + std::to_string(c) + " in both P0 and P2");
  for (const auto& [c, rows] : p.trace) {
    if (!std::binary_search(p.p2.begin(), p.p2.end(), c)) bad("trace for a non-P2 id");
    if (rows.size() != static_cast<std::size_t>(p.n_star)) bad("trace row length must be n*");
    for (const auto& t : rows)
      for (ElemId a : t)
        if (!zero.contains(a)) bad("trace outside P0");
  }
  for (const auto& t : p.named)
    for (ElemId a : t)
      if (!zero.contains(a)) bad("named trace outside P0");
}

std::size_t coordinate(const K1Presentation& p, ElemId c, int n) {
  auto it = std::lower_bound(p.p2.begin(), p.p2.end(), c);
  if (it == p.p2.end() || *it != c) throw Error(ErrorCode::kInvalidArgument, "not a P2 id");
  return static_cast<std::size_t>(it - p.p2.begin()) * static_cast<std::size_t>(p.trunc_n) + static_cast<std::size_t>(n);
}

K1Structure materialize(const K1Presentation& p) {
  validate(p);
  const std::size_t coords = p.coordinate_count();
  if (coords > 16)
    throw Error(ErrorCode::kEnumerationOverflow, "presentation needs 2^" + std::to_string(coords) + " free atoms");
  const std::size_t np0 = p.p0.size();
  const std::size_t free_atoms = std::size_t{1} << coords;
  const std::size_t w = np0 + free_atoms;
  K1Structure m;
  m.trunc_n = p.trunc_n;
  m.p0 = p.p0;
  m.p2 = p.p2;
  AtomSet designated(w);
  for (std::size_t i = 0; i < np0; ++i) {
    designated.set(i);
    m.g1[p.p0[i]] = AtomSet::single(w, i);
  }
  m.p1 = FiniteBooleanAlgebra(w, designated);
  auto element = [&](const std::set<ElemId>& tr, std::size_t coord) {
    AtomSet x(w);
    for (std::size_t i = 0; i < np0; ++i)
      if (tr.contains(p.p0[i])) x.set(i);
    for (std::size_t code = 0; code < free_atoms; ++code)
      if (code >> coord & 1) x.set(np0 + code);
    return x;
  };
  static const std::set<ElemId> kNone;
  for (ElemId c : p.p2) {
    auto& row = m.f[c];
    for (int n = 0; n < p.trunc_n; ++n) {
      const auto& tr = n < p.n_star && p.trace.contains(c) ? p.trace.at(c)[static_cast<std::size_t>(n)] : kNone;
      row.push_back(element(tr, coordinate(p, c, n)));
    }
  }
  for (std::size_t j = 0; j < p.named.size(); ++j)
    m.p1.name("x" + std::to_string(j), element(p.named[j], p.p2.size() * static_cast<std::size_t>(p.trunc_n) + j));
  return m;
}

K1Witness presentation_witness(const K1Presentation& p) { return standard_witness(materialize(p), p.n_star); }

namespace {

bool injective_into(const std::map<ElemId, ElemId>& m, const std::vector<ElemId>& domain,
                    const std::vector<ElemId>& codomain) {
  if (m.size() != domain.size()) return false;
  std::set<ElemId> seen;
  for (ElemId d : domain) {
    auto it = m.find(d);
    if (it == m.end() || !std::binary_search(codomain.begin(), codomain.end(), it->second)) return false;
    if (!seen.insert(it->second).second) return false;
  }
  return true;
}

}  // namespace

std::optional<K1Embedding> derive_embedding(const K1Structure& src, const K1Structure& dst,
                                            const std::map<ElemId, ElemId>& p0, const std::map<ElemId, ElemId>& p2,
                                            std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<K1Embedding> {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (src.trunc_n != dst.trunc_n) return fail("different truncation");
  if (!injective_into(p0, src.p0, dst.p0)) return fail("P0 map is not an injection into P0");
  if (!injective_into(p2, src.p2, dst.p2)) return fail("P2 map is not an injection into P2");
  const std::size_t ws = src.atom_count();
  const std::size_t wd = dst.atom_count();
  std::vector<AtomSet> gs, gd;
  for (ElemId a : src.p0) {
    if (!src.g1.contains(a) || !dst.g1.contains(p0.at(a))) return fail("missing G1 value");
    gs.push_back(src.g1.at(a).resized(ws));
    gd.push_back(dst.g1.at(p0.at(a)).resized(wd));
  }
  for (ElemId c : src.p2) {
    if (!src.f.contains(c) || !dst.f.contains(p2.at(c))) return fail("missing F row");
    const auto& rs = src.f.at(c);
    const auto& rd = dst.f.at(p2.at(c));
    if (rs.size() != rd.size()) return fail("F rows of different length");
    for (std::size_t n = 0; n < rs.size(); ++n) {
      gs.push_back(rs[n].resized(ws));
      gd.push_back(rd[n].resized(wd));
    }
  }
  for (const auto& [label, x] : src.p1.named()) {
    auto it = dst.p1.named().find(label);
    if (it == dst.p1.named().end()) return fail("named element " + label + " missing in target");
    gs.push_back(x.resized(ws));
    gd.push_back(it->second.resized(wd));
  }
  const AtomSignatures ss(ws, gs);
  const AtomSignatures sd(wd, gd);
  const auto order = ss.sorted();
  for (std::size_t i = 1; i < order.size(); ++i)
    if (signature_equal(ss.of(order[i - 1]), ss.of(order[i])))
      return fail("source atoms are not separated by generators");
  K1Embedding e{p0, p2, BAEmbedding{wd, std::vector<AtomSet>(ws, AtomSet(wd))}};
  for (std::size_t b = 0; b < wd; ++b) {
    auto it = std::lower_bound(order.begin(), order.end(), b, [&](std::size_t a, std::size_t t) {
      return signature_less(ss.of(a), sd.of(t));
    });
    if (it == order.end() || !signature_equal(ss.of(*it), sd.of(b)))
      return fail("target atom " + std::to_string(b) + " has a signature absent in the source");
    e.p1.image[*it].set(b);
  }
  for (std::size_t a = 0; a < ws; ++a) {
    const AtomSet& img = e.p1.image[a];
    if (img.none()) return fail("source atom " + std::to_string(a) + " has an empty image");
    if (src.p1.designated().test(a)) {
      if (img.count() != 1 || !dst.p1.designated().test(img.next()))
        return fail("designated atom " + std::to_string(a) + " does not map to one designated atom");
    } else if ((img - dst.p1.designated()).none()) {
      return fail("atom " + std::to_string(a) + " maps into the designated part");
    }
  }
  return e;
}

std::optional<K1Embedding> inclusion_embedding(const K1Structure& src, const K1Structure& dst, std::string* why) {
  std::map<ElemId, ElemId> p0, p2;
  for (ElemId a : src.p0) p0[a] = a;
  for (ElemId c : src.p2) p2[c] = c;
  return derive_embedding(src, dst, p0, p2, why);
}

K1Embedding compose(const K1Embedding& first, const K1Embedding& second) {
  K1Embedding out;
  for (const auto& [a, b] : first.p0) out.p0[a] = second.p0.at(b);
  for (const auto& [a, b] : first.p2) out.p2[a] = second.p2.at(b);
  out.p1 = compose(first.p1, second.p1);
  return out;
}

bool same_up_to_atoms(const K1Structure& a, const K1Structure& b) {
  return a.p0 == b.p0 && a.p2 == b.p2 && a.atom_count() == b.atom_count() && inclusion_embedding(a, b).has_value();
}

bool is_presentation_embedding(const K1Presentation& a, const K1Presentation& b, const std::map<ElemId, ElemId>& p0,
                               const std::map<ElemId, ElemId>& p2) {
  if (a.trunc_n != b.trunc_n || a.n_star != b.n_star) return false;
  if (!injective_into(p0, a.p0, b.p0) || !injective_into(p2, a.p2, b.p2)) return false;
  for (ElemId x : a.p0)
    for (ElemId c : a.p2)
      for (int n = 0; n < a.n_star; ++n)
        if (a.incident(x, c, n) != b.incident(p0.at(x), p2.at(c), n)) return false;
  return true;
}

Vocabulary presentation_vocabulary(int n_star, int trunc_n) {
  Vocabulary v;
  v.add_relation("P0", 1).add_relation("P2", 1);
  for (int n = 0; n < n_star; ++n) v.add_relation("T" + std::to_string(n), 2);
  v.set_index_bound(trunc_n);
  return v;
}

FiniteStructure encode(const K1Presentation& p) {
  validate(p);
  FiniteStructure m(presentation_vocabulary(p.n_star, p.trunc_n));
  for (ElemId a : p.p0) {
    m.add_element(a);
    m.add_tuple(0, {a});
  }
  for (ElemId c : p.p2) {
    m.add_element(c);
    m.add_tuple(1, {c});
  }
  for (const auto& [c, rows] : p.trace)
    for (std::size_t n = 0; n < rows.size(); ++n)
      for (ElemId a : rows[n]) m.add_tuple(2 + n, {a, c});
  return m;
}

K1Presentation decode(const FiniteStructure& m, int n_star) {
  K1Presentation p;
  p.n_star = n_star;
  p.trunc_n = m.vocabulary().index_bound().value_or(kDefaultTruncation);
  for (ElemId e : m.universe()) {
    if (m.holds(0, {e})) p.p0.push_back(e);
    if (m.holds(1, {e})) p.p2.push_back(e);
  }
  for (ElemId c : p.p2) {
    auto& rows = p.trace[c];
    rows.resize(static_cast<std::size_t>(n_star));
    for (int n = 0; n < n_star; ++n)
      for (ElemId a : p.p0)
        if (m.holds(2 + static_cast<std::size_t>(n), {a, c})) rows[static_cast<std::size_t>(n)].insert(a);
  }
  validate(p);
  return p;
}

}  // namespace fraisse
