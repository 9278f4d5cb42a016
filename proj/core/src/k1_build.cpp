#include "fraisse/k1_build.hpp"

#include <algorithm>

#include "fraisse/engine.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_good.hpp"

namespace fraisse {

std::vector<K1Presentation> k1_corpus(const CorpusOptions& options) {
  std::vector<K1Presentation> out;
  const int top = std::min(options.max_n_star, options.trunc_n - 1);
  for (int ns = 0; ns <= top; ++ns) {
    std::set<std::string> seen;
    for (std::size_t p = 0; p <= options.max_p0; ++p)
      for (std::size_t q = 0; q <= options.max_p2; ++q) {
        const std::size_t bits = static_cast<std::size_t>(ns) * p * q;
        if (bits > 20) throw Error(ErrorCode::kEnumerationOverflow, "corpus needs too many incidence bits");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
          K1Presentation x;
          x.trunc_n = options.trunc_n;
          x.n_star = ns;
          for (std::size_t i = 0; i < p; ++i) x.p0.push_back(static_cast<ElemId>(i));
          for (std::size_t i = 0; i < q; ++i) x.p2.push_back(static_cast<ElemId>(p + i));
          std::size_t bit = 0;
          for (ElemId c : x.p2) {
            auto& rows = x.trace[c];
            rows.resize(static_cast<std::size_t>(ns));
            for (auto& row : rows)
              for (ElemId a : x.p0)
                if (mask >> bit++ & 1) row.insert(a);
          }
          const FiniteStructure canon = canonical_form(encode(x));
          if (seen.insert(nlohmann::json(canon).dump()).second) out.push_back(decode(canon, ns));
        }
      }
  }
  return out;
}

K1Presentation restrict_presentation(const K1Presentation& p, const std::set<ElemId>& keep) {
  K1Presentation out;
  out.trunc_n = p.trunc_n;
  out.n_star = p.n_star;
  for (ElemId a : p.p0)
    if (keep.contains(a)) out.p0.push_back(a);
  for (ElemId c : p.p2) {
    if (!keep.contains(c)) continue;
    out.p2.push_back(c);
    auto& rows = out.trace[c];
    for (const auto& row : p.trace.at(c)) {
      std::set<ElemId> r;
      for (ElemId a : row)
        if (keep.contains(a)) r.insert(a);
      rows.push_back(std::move(r));
    }
  }
  for (const auto& x : p.named) {
    std::set<ElemId> r;
    for (ElemId a : x)
      if (keep.contains(a)) r.insert(a);
    out.named.push_back(std::move(r));
  }
  return out;
}

std::vector<K1Presentation> sub_presentations(const K1Presentation& p) {
  std::vector<ElemId> ids(p.p0);
  ids.insert(ids.end(), p.p2.begin(), p.p2.end());
  if (ids.size() > 20) throw Error(ErrorCode::kEnumerationOverflow, "too many sub-presentations");
  std::vector<K1Presentation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    std::set<ElemId> keep;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1) keep.insert(ids[i]);
    out.push_back(restrict_presentation(p, keep));
  }
  return out;
}

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::vector<std::size_t> free_atoms(const K1Structure& m) {
  return (~m.b_star()).indices();
}

// Maps every stored element through an atom-level rewrite of the given width.
template <class F>
K1Structure remap(const K1Structure& m, std::size_t width, F&& f) {
  K1Structure out = m;
  out.p1 = FiniteBooleanAlgebra(width, f(m.b_star()));
  for (const auto& [label, x] : m.p1.named()) out.p1.name(label, f(x));
  for (auto& [a, g] : out.g1) g = f(g);
  for (auto& [c, row] : out.f)
    for (auto& x : row) x = f(x);
  return out;
}

// Drops the given atoms.
K1Structure delete_atoms(const K1Structure& m, const AtomSet& gone) {
  std::vector<std::size_t> index(m.atom_count(), AtomSet::npos);
  std::size_t w = 0;
  for (std::size_t i = 0; i < m.atom_count(); ++i)
    if (!gone.test(i)) index[i] = w++;
  return remap(m, w, [&](const AtomSet& x) {
    AtomSet y(w);
    for (std::size_t i : x.indices())
      if (index[i] != AtomSet::npos) y.set(index[i]);
    return y;
  });
}

// Splits atom i into i and a new last atom.
K1Structure split_atom(const K1Structure& m, std::size_t i) {
  const std::size_t w = m.atom_count() + 1;
  return remap(m, w, [&](const AtomSet& x) {
    AtomSet y = x.resized(w);
    if (x.test(i)) y.set(w - 1);
    return y;
  });
}

}  // namespace

std::optional<K1Structure> kminus1_mutant(const K1Structure& base, int clause, std::mt19937_64& rng) {
  K1Structure m = base;
  const std::size_t w = m.atom_count();
  const std::size_t big_n = static_cast<std::size_t>(m.trunc_n);
  const auto loose = free_atoms(m);
  std::bernoulli_distribution coin(0.5);
  switch (clause) {
    case 1: {
      if (m.p0.empty()) return std::nullopt;
      const ElemId a = pick(m.p0, rng);
      if (coin(rng)) {
        m.p0.push_back(a);
        std::sort(m.p0.begin(), m.p0.end());
      } else {
        m.p2.push_back(a);
        std::sort(m.p2.begin(), m.p2.end());
        m.f[a] = std::vector<AtomSet>(big_n, AtomSet(w));
      }
      return m;
    }
    case 2: {
      if (m.p0.empty()) return std::nullopt;
      const ElemId a = pick(m.p0, rng);
      m.g1[a] = m.g1[a].resized(w + 1 + rng() % 3);
      return m;
    }
    case 3: {
      // two atoms, at most one of them designated
      const ElemId a = m.fresh_id();
      m.p0.push_back(a);
      if (loose.size() >= 2 && (base.p0.empty() || coin(rng))) {
        std::vector<std::size_t> two = loose;
        std::shuffle(two.begin(), two.end(), rng);
        m.g1[a] = AtomSet::from_indices(w, {two[0], two[1]});
      } else if (!base.p0.empty()) {
        m.g1[a] = AtomSet::single(w, pick(loose, rng)) | base.g1.at(pick(base.p0, rng));
      } else {
        return std::nullopt;
      }
      return m;
    }
    case 4: {
      AtomSet top(w);
      for (const auto& [c, row] : m.f) top |= row.back();
      std::vector<std::size_t> clear;
      for (std::size_t i : loose)
        if (!top.test(i)) clear.push_back(i);
      if (clear.empty() || loose.size() < 2) return std::nullopt;
      AtomSet d = m.b_star();
      d.set(pick(clear, rng));
      m.p1.set_designated(d);
      return m;
    }
    case 5: {
      if (m.p0.empty()) return std::nullopt;
      const ElemId a = pick(m.p0, rng);
      const ElemId twin = m.fresh_id();
      m.p0.push_back(twin);
      m.g1[twin] = m.g1.at(a);
      return m;
    }
    case 6: {
      if (m.p2.empty()) return std::nullopt;
      auto& row = m.f[pick(m.p2, rng)];
      row.push_back(coin(rng) ? row.back() : AtomSet(w));
      return m;
    }
    case 7: {
      if (!m.p2.empty() && coin(rng)) {
        auto& row = m.f[pick(m.p2, rng)];
        auto& x = row[rng() % row.size()];
        x = x.resized(w + 1);
      } else {
        m.f[m.fresh_id()] = std::vector<AtomSet>(big_n, AtomSet(w));
      }
      return m;
    }
    case 8: {
      if (m.p2.empty() || m.p0.empty()) return std::nullopt;
      const auto des = m.b_star().indices();
      m.f[pick(m.p2, rng)].back().set(pick(des, rng));
      return m;
    }
    case 9: {
      if (loose.empty()) return std::nullopt;
      return split_atom(m, pick(loose, rng));
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "no K-1 clause " + std::to_string(clause));
  }
}

std::optional<K1Mutant> k1_mutant(const K1Structure& base, int n_star, int clause, std::mt19937_64& rng) {
  const int big_n = base.trunc_n;
  if (n_star < 0 || n_star >= big_n) throw Error(ErrorCode::kInvalidArgument, "n* must lie in [0, N)");
  const std::size_t w = base.atom_count();
  const auto ns = static_cast<std::size_t>(n_star);
  std::bernoulli_distribution coin(0.5);
  K1Mutant out{base, standard_witness(base, n_star)};
  auto designated_gens = [](const K1Structure& m) {
    std::vector<AtomSet> g;
    for (std::size_t i : m.b_star().indices()) g.push_back(AtomSet::single(m.atom_count(), i));
    return g;
  };
  switch (clause) {
    case 1:
      out.w.b_star ^= AtomSet::single(w, rng() % w);
      return out;
    case 2:
      if (coin(rng))
        out.w.chain.push_back(out.w.chain.back());
      else
        out.w.chain.insert(out.w.chain.begin(), out.w.chain.front());
      return out;
    case 3: {
      if (n_star == 0 || base.p2.empty()) return std::nullopt;
      const ElemId hc = pick(base.p2, rng);
      const std::size_t hn = rng() % ns;
      const ElemId tc = pick(base.p2, rng);
      const std::size_t tn = ns + rng() % (static_cast<std::size_t>(big_n) - ns);
      auto gens = designated_gens(base);
      for (ElemId c : base.p2)
        for (std::size_t n = 0; n < ns; ++n) {
          AtomSet h = base.f.at(c)[n];
          if (c == hc && n == hn) h ^= base.f.at(tc)[tn];
          gens.push_back(h);
        }
      out.w.chain.clear();
      for (std::size_t i = ns; i <= static_cast<std::size_t>(big_n); ++i) {
        if (i > ns)
          for (ElemId c : base.p2) gens.push_back(base.f.at(c)[i - 1]);
        out.w.chain.push_back(Subalgebra::generated_by(w, gens));
      }
      return out;
    }
    case 4: {
      std::set<ElemId> u;
      for (ElemId a : base.p0)
        if (coin(rng)) u.insert(a);
      out.m = adjoin_trace_element(base, u).n;
      out.w = standard_witness(out.m, n_star);
      return out;
    }
    case 5: {
      if (n_star < 2 || base.p2.empty()) return std::nullopt;
      const ElemId c = pick(base.p2, rng);
      const AtomSet gone = base.f.at(c)[1] - base.b_star();
      out.m = delete_atoms(base, gone);
      auto& row = out.m.f.at(c);
      row[1] = row[0];
      out.w = standard_witness(out.m, n_star);
      return out;
    }
    case 6: {
      if (big_n - n_star < 2 || base.p2.empty() || base.p0.empty()) return std::nullopt;
      out.m.f.at(pick(base.p2, rng))[ns].set(pick(base.b_star().indices(), rng));
      out.w = standard_witness(out.m, n_star);
      return out;
    }
    case 7: {
      if (big_n - n_star < 2 || base.p2.empty()) return std::nullopt;
      auto gens = out.w.chain[1].blocks();
      gens.push_back(base.f.at(pick(base.p2, rng))[ns + 1]);
      out.w.chain[1] = Subalgebra::generated_by(w, gens);
      return out;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "no K1 clause " + std::to_string(clause));
  }
}

}  // namespace fraisse
