#include "ba_oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace oracle {

std::vector<AtomSet> all_elements(std::size_t w) {
  std::vector<AtomSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << w); ++m) out.push_back(AtomSet::from_mask(w, m));
  return out;
}

std::set<AtomSet> generated_elements(std::size_t w, const std::vector<AtomSet>& gens) {
  std::set<AtomSet> s{AtomSet(w), AtomSet::full(w)};
  s.insert(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<AtomSet> now(s.begin(), s.end());
    for (const auto& a : now) {
      if (s.insert(~a).second) grew = true;
      for (const auto& b : now)
        if (s.insert(a & b).second) grew = true;
    }
  }
  return s;
}

std::vector<AtomSet> minimal_elements(const std::set<AtomSet>& algebra) {
  std::vector<AtomSet> out;
  for (const auto& a : algebra) {
    if (a.none()) continue;
    bool minimal = true;
    for (const auto& b : algebra)
      if (b.any() && b != a && b.is_subset_of(a)) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

bool dnf_independent(std::size_t w, const std::set<AtomSet>& y_set, const std::vector<AtomSet>& x, const AtomSet& ideal) {
  const std::vector<AtomSet> y(y_set.begin(), y_set.end());
  const std::size_t k = y.size();
  std::vector<AtomSet> minterm;
  for (std::size_t p = 0; p < (std::size_t{1} << k); ++p) {
    AtomSet t = AtomSet::full(w);
    for (std::size_t i = 0; i < k; ++i) t &= (p >> i & 1) ? y[i] : ~y[i];
    minterm.push_back(t);
  }
  const auto base = generated_elements(w, x);
  const std::uint64_t polys = std::uint64_t{1} << minterm.size();
  for (std::uint64_t sigma = 1; sigma < polys; ++sigma) {
    AtomSet value(w);
    for (std::size_t p = 0; p < minterm.size(); ++p)
      if (sigma >> p & 1) value |= minterm[p];
    for (const auto& d : base) {
      if (d.is_subset_of(ideal)) continue;
      if ((value & d).is_subset_of(ideal)) return false;
    }
  }
  return true;
}

std::set<AtomSet> signature_atoms(std::size_t w, const std::vector<AtomSet>& gens, const AtomSet& ideal) {
  std::map<std::vector<bool>, AtomSet> groups;
  for (std::size_t a = 0; a < w; ++a) {
    std::vector<bool> sig;
    for (const auto& g : gens) sig.push_back(g.test(a));
    if (ideal.test(a)) {
      sig.push_back(true);
      for (std::size_t i = 0; i < w; ++i) sig.push_back(i == a);
    }
    auto it = groups.try_emplace(sig, AtomSet(w)).first;
    it->second.set(a);
  }
  std::set<AtomSet> out;
  for (const auto& [sig, atoms] : groups) out.insert(atoms);
  return out;
}

bool minterm_independent(std::size_t w, const std::set<AtomSet>& y_set, const std::vector<AtomSet>& x, const AtomSet& ideal) {
  const std::vector<AtomSet> y(y_set.begin(), y_set.end());
  const auto atoms = signature_atoms(w, x, AtomSet(w));
  for (std::size_t p = 0; p < (std::size_t{1} << y.size()); ++p) {
    AtomSet t = AtomSet::full(w);
    for (std::size_t i = 0; i < y.size(); ++i) t &= (p >> i & 1) ? y[i] : ~y[i];
    for (const auto& d : atoms)
      if (!d.is_subset_of(ideal) && (t & d).is_subset_of(ideal)) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> all_maps(std::size_t from, std::size_t to) {
  std::vector<std::vector<std::size_t>> out;
  if (to == 0) {
    if (from == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> cur(from, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < from && ++cur[i] == to) cur[i++] = 0;
    if (i == from) break;
  }
  return out;
}

std::vector<std::vector<std::size_t>> surjections(std::size_t from, std::size_t to) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& m : all_maps(from, to)) {
    std::set<std::size_t> hit(m.begin(), m.end());
    if (hit.size() == to) out.push_back(std::move(m));
  }
  return out;
}

AtomSet pull_back(const std::vector<std::size_t>& phi, const AtomSet& x) {
  AtomSet out(phi.size());
  for (std::size_t t = 0; t < phi.size(); ++t)
    if (x.test(phi[t])) out.set(t);
  return out;
}

fraisse::BAEmbedding embedding_of(std::size_t source_atoms, const std::vector<std::size_t>& phi) {
  fraisse::BAEmbedding e{phi.size(), std::vector<AtomSet>(source_atoms, AtomSet(phi.size()))};
  for (std::size_t t = 0; t < phi.size(); ++t) e.image[phi[t]].set(t);
  return e;
}

bool is_free_basis(std::size_t n, const std::vector<AtomSet>& basis) {
  const std::size_t w = std::size_t{1} << n;
  if (basis.size() != n) return false;
  for (std::size_t p = 0; p < w; ++p) {
    AtomSet t = AtomSet::full(w);
    for (std::size_t i = 0; i < n; ++i) t &= (p >> i & 1) ? basis[i] : ~basis[i];
    if (t.none()) return false;
  }
  return true;
}

bool some_basis_contains(std::size_t n, const AtomSet& b) {
  const std::size_t w = std::size_t{1} << n;
  const auto elems = all_elements(w);
  std::vector<AtomSet> pick{b};
  std::function<bool(std::size_t)> grow = [&](std::size_t from) -> bool {
    if (pick.size() == n) return is_free_basis(n, pick);
    for (std::size_t i = from; i < elems.size(); ++i) {
      pick.push_back(elems[i]);
      if (grow(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return grow(0);
}

}  // namespace oracle
