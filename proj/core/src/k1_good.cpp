#include "fraisse/k1_good.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "fraisse/error.hpp"

namespace fraisse {

namespace {

struct Split {
  K1Structure n;
  K1Embedding e;
  AtomSet coord;  // second copies of the free atoms
};

// Doubles the free part: each non-designated atom becomes two atoms.
Split split_free(const K1Structure& m) {
  const std::size_t w = m.atom_count();
  std::vector<std::size_t> first(w);
  std::size_t next = 0;
  for (std::size_t i = 0; i < w; ++i) {
    first[i] = next;
    next += m.p1.designated().test(i) ? 1 : 2;
  }
  Split s;
  s.e.p1.target_atoms = next;
  AtomSet designated(next);
  s.coord = AtomSet(next);
  for (std::size_t i = 0; i < w; ++i) {
    AtomSet img = AtomSet::single(next, first[i]);
    if (m.p1.designated().test(i)) {
      designated.set(first[i]);
    } else {
      img.set(first[i] + 1);
      s.coord.set(first[i] + 1);
    }
    s.e.p1.image.push_back(std::move(img));
  }
  for (ElemId a : m.p0) s.e.p0[a] = a;
  for (ElemId c : m.p2) s.e.p2[c] = c;
  s.n.trunc_n = m.trunc_n;
  s.n.p0 = m.p0;
  s.n.p2 = m.p2;
  s.n.p1 = FiniteBooleanAlgebra(next, designated);
  for (const auto& [label, x] : m.p1.named()) s.n.p1.name(label, s.e.apply(x));
  for (const auto& [a, x] : m.g1) s.n.g1[a] = s.e.apply(x);
  for (const auto& [c, row] : m.f)
    for (const auto& x : row) s.n.f[c].push_back(s.e.apply(x));
  return s;
}

Split add_p2(const K1Structure& m, ElemId c) {
  Split s = split_free(m);
  s.n.p2.insert(std::upper_bound(s.n.p2.begin(), s.n.p2.end(), c), c);
  auto& row = s.n.f[c];
  row.assign(static_cast<std::size_t>(m.trunc_n), AtomSet(s.n.atom_count()));
  row.back() = s.coord;
  return s;
}

std::vector<AtomSet> image_generators(const K1Structure& m, const K1Embedding& e) {
  return e.p1.apply_all(m.generators());
}

}  // namespace

AdjoinResult adjoin_trace_element(const K1Structure& m, const std::set<ElemId>& u) {
  for (ElemId a : u)
    if (!std::binary_search(m.p0.begin(), m.p0.end(), a))
      throw Error(ErrorCode::kInvalidArgument, "trace element " + std::to_string(a) + " is not in P0");
  Split s = split_free(m);
  AdjoinResult r;
  r.b = s.coord;
  for (ElemId a : u) r.b |= s.n.g1.at(a);
  std::size_t k = s.n.p1.named().size();
  do {
    r.label = "g" + std::to_string(k++);
  } while (s.n.p1.named().contains(r.label));
  s.n.p1.name(r.label, r.b);
  r.n = std::move(s.n);
  r.e = std::move(s.e);
  return r;
}

GoodChain make_good_chain(std::uint64_t seed, std::size_t k, std::size_t surplus) {
  const int big_n = static_cast<int>(std::max<std::size_t>(k, 1));
  K1Structure base;
  base.trunc_n = big_n;
  base.p0 = {0, 1, 2};
  base.p1 = FiniteBooleanAlgebra(4, AtomSet(4, {0, 1, 2}));
  for (ElemId a : base.p0) base.g1[a] = AtomSet::single(4, a);

  std::mt19937_64 rng(seed);
  std::vector<std::set<ElemId>> u(k);
  if (k >= 2) {
    std::uniform_int_distribution<std::size_t> slot(0, k - 1);
    for (ElemId a : base.p0) {
      const std::size_t s = slot(rng);
      if (s + 1 < k) u[s].insert(a);  // slot k-1 means unused
    }
  }

  GoodChain g;
  g.chain.push_back(base);
  for (std::size_t n = 0; n < k; ++n) {
    AdjoinResult adj = adjoin_trace_element(g.chain.back(), u[n]);
    K1Structure cur = std::move(adj.n);
    K1Embedding e = std::move(adj.e);
    FreeExtensionWitness w;
    w.i.push_back(adj.b);
    std::optional<AtomSet> first_tail;
    for (std::size_t s = 0; s < surplus; ++s) {
      const ElemId c = cur.fresh_id();
      Split sp = add_p2(cur, c);
      for (auto& x : w.i) x = sp.e.apply(x);
      if (first_tail) first_tail = sp.e.apply(*first_tail);
      e = compose(e, sp.e);
      w.i.push_back(sp.coord);
      if (!first_tail) first_tail = sp.coord;
      w.h[c] = big_n - 1;
      cur = std::move(sp.n);
    }
    g.b.push_back(first_tail ? w.i.front() ^ *first_tail : w.i.front());
    g.links.push_back({std::move(e), std::move(w)});
    g.chain.push_back(std::move(cur));
  }
  return g;
}

Report check_good_sequence(const GoodChain& g, const GoodOptions& options) {
  Report r;
  const std::size_t k = g.links.size();
  if (g.chain.size() != k + 1 || g.b.size() != k)
    throw Error(ErrorCode::kInvalidArgument, "a chain of length k needs k links and k elements");
  std::optional<std::size_t> bad_link, thin, dependent;
  for (std::size_t n = 0; n < k; ++n) {
    if (!check_free_extension(g.chain[n], g.chain[n + 1], g.links[n].e, g.links[n].w).passed() && !bad_link)
      bad_link = n;
    if (g.chain[n + 1].p2.size() < g.chain[n].p2.size() + options.surplus && !thin) thin = n;
    const std::size_t w = g.chain[n + 1].atom_count();
    const bool ok = g.b[n].width() == w &&
                    !find_independence_violation(w, {g.b[n]}, image_generators(g.chain[n], g.links[n].e),
                                                 PrincipalIdeal{g.chain[n + 1].b_star()});
    if (!ok && !dependent) dependent = n;
  }
  auto link_json = [](const std::optional<std::size_t>& n) { return n ? nlohmann::json(*n) : nlohmann::json(); };
  r.add("good.links", !bad_link, bad_link ? "a link witness fails" : "", link_json(bad_link));
  r.add("good.a", !thin, thin ? "a link adds too few P2 elements" : "", link_json(thin));
  r.add("good.b", !dependent, dependent ? "b_n is not free from the previous member" : "", link_json(dependent));
  const std::size_t slack = options.slack.value_or(k > 0 ? k - 1 : 0);
  std::optional<nlohmann::json> under;
  for (std::size_t i = 0; i <= k && !under; ++i)
    for (ElemId a : g.chain[i].p0)
      for (std::size_t n = i + slack; n < k && !under; ++n) {
        auto it = g.chain[n + 1].g1.find(a);
        if (it != g.chain[n + 1].g1.end() && it->second.is_subset_of(g.b[n]))
          under = nlohmann::json{{"i", i}, {"a", a}, {"n", n}};
      }
  r.add("good.c", !under, under ? "an old P0 element stays under b_n" : "", under ? *under : nlohmann::json());
  return r;
}

LabelResult label_good_sequence(const GoodChain& g, const GoodOptions& options) {
  // A short surplus shows up below as a failed harvest, naming the link.
  const Report good = check_good_sequence(g, options);
  std::string ids;
  for (const auto& id : good.failed_ids())
    if (id != "good.a") ids += " " + id;
  if (!ids.empty()) throw Error(ErrorCode::kPreconditionFailed, "chain is not good:" + ids);
  const std::size_t k = g.links.size();
  const K1Structure& top = g.chain.back();
  const std::size_t w = top.atom_count();
  const int big_n = top.trunc_n;
  const PrincipalIdeal p4{top.b_star()};

  std::vector<K1Embedding> into(k + 1);
  into[k] = *inclusion_embedding(top, top);
  for (std::size_t n = k; n-- > 0;) into[n] = compose(g.links[n].e, into[n + 1]);

  LabelResult r;
  std::vector<AtomSet> b_top;
  for (std::size_t n = 0; n < k; ++n) {
    const AtomSet b = into[n + 1].apply(g.b[n]);
    b_top.push_back(b);
    std::vector<AtomSet> in;
    for (const auto& x : g.links[n].w.i) in.push_back(into[n + 1].apply(x));
    if (in.size() > 20) throw Error(ErrorCode::kEnumerationOverflow, "link witness too large to search supports");

    // Smallest support of b inside the link witness.
    std::optional<std::vector<AtomSet>> support;
    for (std::size_t size = 0; size <= in.size() && !support; ++size)
      for (std::uint32_t mask = 0; mask < (1u << in.size()) && !support; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
        std::vector<AtomSet> j;
        for (std::size_t t = 0; t < in.size(); ++t)
          if (mask >> t & 1) j.push_back(in[t]);
        if (generated_with_ideal(w, j, p4).contains(b)) support = std::move(j);
      }
    if (!support) throw Error(ErrorCode::kPreconditionFailed, "b_" + std::to_string(n) + " has no support in I");
    const std::set<AtomSet> used(support->begin(), support->end());

    // Some new P2 element of the link must keep all of its tails out of the
    // support, or the link has nothing fresh left after relabelling.
    bool harvested = false;
    for (const auto& [c, hc] : g.links[n].w.h) {
      bool clean = true;
      for (int m = std::max(hc, 0); m < big_n; ++m)
        if (used.contains(top.value(c, m))) clean = false;
      harvested = harvested || clean;
    }
    if (!harvested)
      throw Error(ErrorCode::kHarvestFailed, "link " + std::to_string(n) + " has no unused new P2 element");

    const Subalgebra base = Subalgebra::generated_by(w, image_generators(g.chain[n], into[n]));
    const auto rebased = rebase_with_element(top.p1, base, p4, *support, b);
    std::vector<AtomSet> next;
    std::set<AtomSet> seen;
    for (const auto& x : in)
      if (!used.contains(x) && seen.insert(x).second) next.push_back(x);
    for (const auto& x : rebased)
      if (seen.insert(x).second) next.push_back(x);
    std::map<ElemId, int> h;
    for (const auto& [c, hc] : g.links[n].w.h) {
      int lo = std::max(hc, 0);
      auto tails_in = [&](int from) {
        for (int m = from; m < big_n; ++m)
          if (!seen.contains(top.value(c, m))) return false;
        return true;
      };
      while (lo < big_n && !tails_in(lo)) ++lo;
      h[c] = lo;
    }
    r.rebased.push_back(std::move(next));
    r.h.push_back(std::move(h));
  }

  r.labeled = top;
  r.c = top.fresh_id();
  r.labeled.p2.push_back(r.c);
  auto& row = r.labeled.f[r.c];
  for (int n = 0; n < big_n; ++n)
    row.push_back(static_cast<std::size_t>(n) < k ? b_top[static_cast<std::size_t>(n)] : AtomSet(w));

  const Report km = check_Kminus1(r.labeled);
  r.report.add("label.kminus1", km.passed(), km.passed() ? "" : "labelled structure fails K-1",
               nlohmann::json(km.failed_ids()));
  bool row_ok = true;
  for (std::size_t n = 0; n < k; ++n) row_ok = row_ok && r.labeled.value(r.c, static_cast<int>(n)) == b_top[n];
  r.report.add("label.row", row_ok, row_ok ? "" : "F_n(c) differs from b_n");
  for (std::size_t i = 0; i <= k; ++i) {
    FreeExtensionWitness wi;
    std::set<AtomSet> seen;
    for (std::size_t j = i; j < k; ++j) {
      for (const auto& x : r.rebased[j])
        if (seen.insert(x).second) wi.i.push_back(x);
      for (const auto& [c, hc] : r.h[j]) wi.h[c] = hc;
    }
    wi.h[r.c] = static_cast<int>(i);
    const Report fr = check_free_extension(g.chain[i], r.labeled, into[i], wi);
    r.report.add("label.free." + std::to_string(i), fr.passed(), fr.passed() ? "" : "free extension fails",
                 nlohmann::json(fr.failed_ids()));
    r.over_chain.push_back(std::move(wi));
  }
  return r;
}

}  // namespace fraisse
