#include "fraisse/kdim.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <random>
#include <sstream>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

using nlohmann::json;

Vocabulary kr_vocabulary(int r, int trunc_n) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be at least 1");
  if (trunc_n < 1) throw Error(ErrorCode::kInvalidArgument, "N must be at least 1");
  Vocabulary v;
  for (int n = 0; n < trunc_n; ++n) v.add_relation("R" + std::to_string(n), r + 1);
  for (int n = 0; n < trunc_n; ++n) v.add_function("f" + std::to_string(n), r + 1);
  v.set_index_bound(trunc_n);
  return v;
}

std::optional<int> KrStructure::r_class(const Tuple& t) const {
  for (int n = 0; n < trunc_n(); ++n)
    if (m.holds(static_cast<std::size_t>(n), t)) return n;
  return std::nullopt;
}

KrStructure empty_kr(int r, int trunc_n) { return KrStructure{r, FiniteStructure(kr_vocabulary(r, trunc_n))}; }

void set_tuple(KrStructure& m, const Tuple& t, int n, const std::vector<ElemId>& low) {
  const int big_n = m.trunc_n();
  if (n < 0 || n >= big_n) throw Error(ErrorCode::kInvalidArgument, "R class out of range");
  if (low.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::kInvalidArgument, "need one value per f_m below n");
  if (t.size() != static_cast<std::size_t>(m.arity())) throw Error(ErrorCode::kInvalidArgument, "tuple of the wrong arity");
  m.m.add_tuple(static_cast<std::size_t>(n), t);
  for (int k = 0; k < big_n; ++k)
    m.m.set_value(static_cast<std::size_t>(k), t, k < n ? low[static_cast<std::size_t>(k)] : t[0]);
}

std::vector<Tuple> all_tuples(const std::vector<ElemId>& universe, int arity) {
  std::vector<Tuple> out;
  if (universe.empty()) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  while (true) {
    Tuple t;
    for (std::size_t i : idx) t.push_back(universe[i]);
    out.push_back(std::move(t));
    std::size_t pos = idx.size();
    while (pos > 0 && ++idx[pos - 1] == universe.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

std::set<ElemId> closure(const KrStructure& m, const std::set<ElemId>& x) { return closure(m.m, x); }

bool is_independent(const KrStructure& m, const std::set<ElemId>& y) {
  for (ElemId e : y) {
    std::set<ElemId> rest = y;
    rest.erase(e);
    if (closure(m, rest).contains(e)) return false;
  }
  return true;
}

namespace {

// Calls f on every size-s subset of v in lexicographic order until it returns true.
template <class F>
bool for_each_subset(const std::vector<ElemId>& v, std::size_t s, F&& f) {
  if (s > v.size()) return false;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    std::vector<ElemId> pick;
    for (std::size_t i : idx) pick.push_back(v[i]);
    if (f(pick)) return true;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == v.size() - s + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::vector<ElemId>> find_independent(const KrStructure& m, std::size_t size) {
  std::optional<std::vector<ElemId>> out;
  for_each_subset(m.m.universe(), size, [&](const std::vector<ElemId>& y) {
    if (!is_independent(m, std::set<ElemId>(y.begin(), y.end()))) return false;
    out = y;
    return true;
  });
  return out;
}

std::size_t max_independent_size(const KrStructure& m, std::size_t cap) {
  // subsets of independent sets are independent, so stop at the first miss
  std::size_t best = 0;
  for (std::size_t s = 1; s <= cap && s <= m.m.size(); ++s) {
    if (!find_independent(m, s)) break;
    best = s;
  }
  return best;
}

Report check_Kr0_membership(const KrStructure& m) {
  if (!(m.m.vocabulary() == kr_vocabulary(m.r, m.trunc_n())))
    throw Error(ErrorCode::kVocabularyMismatch, "not a structure over the K0^r vocabulary");
  Report rep;
  const int big_n = m.trunc_n();
  const auto tuples = all_tuples(m.m.universe(), m.arity());
  {
    json wit;
    for (const auto& t : tuples) {
      std::vector<int> classes;
      for (int n = 0; n < big_n; ++n)
        if (m.m.holds(static_cast<std::size_t>(n), t)) classes.push_back(n);
      if (classes.size() != 1) {
        wit = {{"tuple", t}, {"classes", classes}};
        break;
      }
    }
    if (wit.is_null())
      for (int n = 0; n < big_n && wit.is_null(); ++n)
        for (const auto& t : m.m.tuples(static_cast<std::size_t>(n)))
          if (!std::all_of(t.begin(), t.end(), [&](ElemId e) { return m.m.contains(e); })) {
            wit = {{"tuple", t}, {"classes", {n}}};
            break;
          }
    rep.add("kr0.partition", wit.is_null(), wit.is_null() ? "" : "a tuple is not in exactly one R_n", wit);
  }
  {
    json wit;
    for (const auto& t : tuples) {
      const auto n = m.r_class(t);
      for (int k = 0; k < big_n && wit.is_null(); ++k) {
        const auto v = m.m.value(static_cast<std::size_t>(k), t);
        const bool bad = !v || !m.m.contains(*v) || (n && k >= *n && *v != t[0]);
        if (bad) wit = {{"tuple", t}, {"n", n ? json(*n) : json()}, {"m", k}, {"value", v ? json(*v) : json()}};
      }
      if (!wit.is_null()) break;
    }
    rep.add("kr0.coherence", wit.is_null(), wit.is_null() ? "" : "f_m(t) is not t_0 for some m at or above the class", wit);
  }
  {
    const auto y = find_independent(m, static_cast<std::size_t>(m.r) + 2);
    rep.add("kr0.independence", !y, y ? "independent subset of size r+2" : "", y ? json(*y) : json());
  }
  return rep;
}

std::vector<ElemId> KConfiguration::union_universe() const {
  std::set<ElemId> u;
  for (const auto& x : members) u.insert(x.m.universe().begin(), x.m.universe().end());
  return {u.begin(), u.end()};
}

namespace {

bool inside(const Tuple& t, const KrStructure& x) {
  return std::all_of(t.begin(), t.end(), [&](ElemId e) { return x.m.contains(e); });
}

int config_r(const KConfiguration& c) {
  if (c.members.empty()) throw Error(ErrorCode::kInvalidArgument, "empty configuration");
  const int r = c.members.front().r;
  const int big_n = c.members.front().trunc_n();
  for (const auto& x : c.members)
    if (x.r != r || x.trunc_n() != big_n) throw Error(ErrorCode::kVocabularyMismatch, "members over different vocabularies");
  return r;
}

// Element indices as bits; a tuple and the elements it reaches.
struct Edge {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
};

class Index {
 public:
  explicit Index(const std::vector<ElemId>& u) : u_(u) {
    if (u.size() > 64) throw Error(ErrorCode::kEnumerationOverflow, "more than 64 elements");
  }
  std::uint64_t bit(ElemId e) const {
    return std::uint64_t{1} << (std::lower_bound(u_.begin(), u_.end(), e) - u_.begin());
  }
  std::uint64_t mask(const Tuple& t) const {
    std::uint64_t m = 0;
    for (ElemId e : t) m |= bit(e);
    return m;
  }
  std::uint64_t all() const { return u_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << u_.size()) - 1; }
  std::size_t size() const { return u_.size(); }

 private:
  const std::vector<ElemId>& u_;
};

std::uint64_t close(std::uint64_t x, const std::vector<Edge>& edges) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges)
      if ((e.from & ~x) == 0 && (e.to & ~x) != 0) {
        x |= e.to;
        grew = true;
      }
  }
  return x;
}

// Some s-subset of the n elements is independent under the edges.
bool has_independent(std::size_t n, std::size_t s, const std::vector<Edge>& edges) {
  if (s > n) return false;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
    if (static_cast<std::size_t>(std::popcount(y)) != s) continue;
    bool indep = true;
    for (std::uint64_t rest = y; rest && indep; rest &= rest - 1) {
      const std::uint64_t e = rest & (~rest + 1);
      if (close(y & ~e, edges) & e) indep = false;
    }
    if (indep) return true;
  }
  return false;
}

struct Prepared {
  int r = 1;
  int big_n = kKrTruncation;
  std::vector<ElemId> u;
  std::vector<Tuple> cross;
  std::vector<Edge> interior;
};

// Validates the configuration and collects what both the search and the oracle need.
Prepared prepare(const KConfiguration& config) {
  Prepared p;
  p.r = config_r(config);
  p.big_n = config.members.front().trunc_n();
  for (std::size_t i = 0; i < config.members.size(); ++i) {
    const auto rep = check_Kr0_membership(config.members[i]);
    if (!rep.passed())
      throw Error(ErrorCode::kPreconditionFailed,
                  "member " + std::to_string(i) + " fails " + rep.failed_ids().front());
  }
  p.u = config.union_universe();
  for (std::size_t i = 0; i < config.members.size(); ++i)
    if (config.members[i].m.size() == p.u.size())
      throw Error(ErrorCode::kFrugalImpossible,
                  "member " + std::to_string(i) + " is the whole union, so it cannot be a proper substructure");
  const Index idx(p.u);
  for (const auto& t : all_tuples(p.u, p.r + 1)) {
    const KrStructure* owner = nullptr;
    for (const auto& x : config.members) {
      if (!inside(t, x)) continue;
      if (!owner) {
        owner = &x;
        continue;
      }
      for (int k = 0; k < p.big_n; ++k)
        if (owner->m.value(static_cast<std::size_t>(k), t) != x.m.value(static_cast<std::size_t>(k), t) ||
            owner->r_class(t) != x.r_class(t))
          throw Error(ErrorCode::kInvalidArgument, "members disagree on a shared tuple");
    }
    if (!owner) {
      p.cross.push_back(t);
      continue;
    }
    Edge e{idx.mask(t), 0};
    for (int k = 0; k < p.big_n; ++k) e.to |= idx.bit(*owner->m.value(static_cast<std::size_t>(k), t));
    e.to &= ~e.from;
    if (e.to) p.interior.push_back(e);
  }
  return p;
}

struct Candidate {
  int n = 0;
  std::vector<ElemId> low;
  std::uint64_t reach = 0;
};

// One candidate per reachable set, each the first (class, values) pair in
// search order that produces it.
std::vector<Candidate> candidates_for(const Tuple& t, const Prepared& p, const Index& idx) {
  const std::uint64_t own = idx.mask(t);
  const std::size_t outside = idx.size() - static_cast<std::size_t>(std::popcount(own));
  std::size_t want = 0;
  for (std::size_t s = 0; s <= outside && s < static_cast<std::size_t>(p.big_n); ++s) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < s; ++i) c = c * (outside - i) / (i + 1);
    want += c;
  }
  std::vector<Candidate> out;
  std::set<std::uint64_t> seen;
  for (int n = 0; n < p.big_n && out.size() < want; ++n) {
    std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
    while (true) {
      Candidate c{n, {}, 0};
      for (std::size_t i : odo) {
        c.low.push_back(p.u[i]);
        c.reach |= idx.bit(p.u[i]);
      }
      c.reach &= ~own;
      if (seen.insert(c.reach).second) out.push_back(std::move(c));
      std::size_t pos = odo.size();
      while (pos > 0 && ++odo[pos - 1] == p.u.size()) odo[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

}  // namespace

std::vector<Tuple> cross_tuples(const KConfiguration& config) {
  config_r(config);
  std::vector<Tuple> out;
  const int arity = config.members.front().arity();
  for (const auto& t : all_tuples(config.union_universe(), arity))
    if (std::none_of(config.members.begin(), config.members.end(), [&](const KrStructure& x) { return inside(t, x); }))
      out.push_back(t);
  return out;
}

KrStructure frugal_amalgamate(const KConfiguration& config, const FrugalOptions& options) {
  Prepared p = prepare(config);
  if (options.order) options.order(p.cross);
  const Index idx(p.u);
  const std::size_t target = static_cast<std::size_t>(p.r) + 2;
  std::vector<std::vector<Candidate>> cands;
  std::vector<Edge> widest;
  for (const auto& t : p.cross) {
    cands.push_back(candidates_for(t, p, idx));
    widest.push_back({idx.mask(t), idx.all() & ~idx.mask(t)});
  }
  std::vector<std::size_t> choice(p.cross.size(), 0);
  auto edges_with = [&](std::size_t assigned, bool widen) {
    std::vector<Edge> e = p.interior;
    for (std::size_t i = 0; i < p.cross.size(); ++i) {
      if (i < assigned)
        e.push_back({idx.mask(p.cross[i]), cands[i][choice[i]].reach});
      else if (widen)
        e.push_back(widest[i]);
    }
    return e;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (options.prune && has_independent(idx.size(), target, edges_with(i, true))) return false;
    if (i == p.cross.size()) return options.prune || !has_independent(idx.size(), target, edges_with(i, false));
    for (choice[i] = 0; choice[i] < cands[i].size(); ++choice[i])
      if (search(i + 1)) return true;
    return false;
  };
  if (!search(0)) throw Error(ErrorCode::kNoAmalgam, "no completion avoids an independent (r+2)-set");

  KrStructure out = empty_kr(p.r, p.big_n);
  for (ElemId e : p.u) out.m.add_element(e);
  for (const auto& x : config.members)
    for (const auto& t : all_tuples(x.m.universe(), x.arity())) {
      if (out.r_class(t)) continue;
      const int n = *x.r_class(t);
      std::vector<ElemId> low;
      for (int k = 0; k < n; ++k) low.push_back(*x.m.value(static_cast<std::size_t>(k), t));
      set_tuple(out, t, n, low);
    }
  for (std::size_t i = 0; i < p.cross.size(); ++i) {
    const auto& c = cands[i][choice[i]];
    set_tuple(out, p.cross[i], c.n, c.low);
  }
  return out;
}

Reach reach_of(const KrStructure& n, const std::vector<Tuple>& tuples) {
  Reach out;
  for (const auto& t : tuples) {
    std::set<ElemId> s;
    for (int k = 0; k < n.trunc_n(); ++k) s.insert(*n.m.value(static_cast<std::size_t>(k), t));
    for (ElemId e : t) s.erase(e);
    out[t] = std::move(s);
  }
  return out;
}

std::vector<Reach> frugal_completions(const KConfiguration& config, std::size_t max_elements) {
  const Prepared p = prepare(config);
  if (p.u.size() > max_elements)
    throw Error(ErrorCode::kEnumerationOverflow, "union has " + std::to_string(p.u.size()) + " elements");
  const Index idx(p.u);
  // every subset of the outside elements with at most N-1 members
  std::vector<std::vector<std::uint64_t>> options;
  std::uint64_t total = 1;
  for (const auto& t : p.cross) {
    const std::uint64_t out = idx.all() & ~idx.mask(t);
    std::vector<std::uint64_t> opts;
    for (std::uint64_t s = out;; s = (s - 1) & out) {
      if (std::popcount(s) < p.big_n) opts.push_back(s);
      if (s == 0) break;
    }
    std::sort(opts.begin(), opts.end());
    total *= opts.size();
    if (total > (std::uint64_t{1} << 24)) throw Error(ErrorCode::kEnumerationOverflow, "too many completions");
    options.push_back(std::move(opts));
  }
  std::vector<Reach> found;
  std::vector<std::size_t> pos(p.cross.size(), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    std::vector<Edge> e = p.interior;
    for (std::size_t i = 0; i < p.cross.size(); ++i) e.push_back({idx.mask(p.cross[i]), options[i][pos[i]]});
    if (!has_independent(idx.size(), static_cast<std::size_t>(p.r) + 2, e)) {
      Reach r;
      for (std::size_t i = 0; i < p.cross.size(); ++i) {
        std::set<ElemId> s;
        for (std::size_t b = 0; b < p.u.size(); ++b)
          if (options[i][pos[i]] >> b & 1) s.insert(p.u[b]);
        r[p.cross[i]] = std::move(s);
      }
      found.push_back(std::move(r));
    }
    for (std::size_t i = p.cross.size(); i-- > 0;) {
      if (++pos[i] < options[i].size()) break;
      pos[i] = 0;
    }
  }
  return found;
}

std::string to_string(FrugalOutcome o) {
  switch (o) {
    case FrugalOutcome::kSuccess:
      return "success";
    case FrugalOutcome::kNoAmalgam:
      return "no_amalgam";
    case FrugalOutcome::kFrugalImpossible:
      return "frugal_impossible";
  }
  return "?";
}

FrugalOutcome run_frugal(const KConfiguration& config, KrStructure* out) {
  try {
    KrStructure n = frugal_amalgamate(config);
    if (out) *out = std::move(n);
    return FrugalOutcome::kSuccess;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoAmalgam) return FrugalOutcome::kNoAmalgam;
    if (e.code() == ErrorCode::kFrugalImpossible) return FrugalOutcome::kFrugalImpossible;
    throw;
  }
}

FrugalOutcome oracle_outcome(const KConfiguration& config) {
  try {
    return frugal_completions(config).empty() ? FrugalOutcome::kNoAmalgam : FrugalOutcome::kSuccess;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFrugalImpossible) return FrugalOutcome::kFrugalImpossible;
    throw;
  }
}

namespace {

std::string region_name(std::size_t mask, int k) {
  std::string s;
  for (int i = 0; i < k; ++i) s += (mask >> i & 1) ? '1' : '0';
  return s;
}

// Count vectors over the nonempty regions summing to at most `bound`.
void compositions(std::size_t regions, std::size_t left, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == regions) {
    out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; c <= left; ++c) {
    cur.push_back(c);
    compositions(regions, left - c, cur, out);
    cur.pop_back();
  }
}

// Random interior tuples for one shape. nullopt when a member fails membership.
std::optional<KConfiguration> draw(int r, int trunc_n, const std::vector<std::vector<ElemId>>& parts,
                                   std::mt19937_64& rng) {
  KConfiguration c;
  for (const auto& part : parts) {
    KrStructure x = empty_kr(r, trunc_n);
    for (ElemId e : part) x.m.add_element(e);
    c.members.push_back(std::move(x));
  }
  std::set<ElemId> all;
  for (const auto& part : parts) all.insert(part.begin(), part.end());
  for (const auto& t : all_tuples({all.begin(), all.end()}, r + 1)) {
    std::vector<std::size_t> owners;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (std::all_of(t.begin(), t.end(), [&](ElemId e) { return c.members[i].m.contains(e); })) owners.push_back(i);
    if (owners.empty()) continue;
    std::vector<ElemId> pool;
    for (ElemId e : parts[owners.front()])
      if (std::all_of(owners.begin(), owners.end(), [&](std::size_t i) { return c.members[i].m.contains(e); }))
        pool.push_back(e);
    const int n = std::uniform_int_distribution<int>(0, trunc_n - 1)(rng);
    std::vector<ElemId> low;
    for (int k = 0; k < n; ++k) low.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    for (std::size_t i : owners) set_tuple(c.members[i], t, n, low);
  }
  for (const auto& x : c.members)
    if (!check_Kr0_membership(x).passed()) return std::nullopt;
  return c;
}

}  // namespace

std::vector<std::pair<SurveyKey, KConfiguration>> survey_configurations(int r, int k, std::size_t bound,
                                                                        std::size_t budget,
                                                                        const SurveyOptions& options) {
  if (k < 1 || k > 6) throw Error(ErrorCode::kInvalidArgument, "k must lie in [1, 6]");
  if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
  kr_vocabulary(r, options.trunc_n);
  const std::size_t regions = (std::size_t{1} << k) - 1;
  std::vector<std::vector<std::size_t>> shapes;
  std::vector<std::size_t> cur;
  compositions(regions, bound, cur, shapes);
  std::vector<std::pair<SurveyKey, KConfiguration>> out;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const auto& counts = shapes[s];
    std::vector<std::vector<ElemId>> parts(static_cast<std::size_t>(k));
    SurveyKey key{r, k, std::vector<std::size_t>(static_cast<std::size_t>(k), 0), ""};
    ElemId next = 0;
    for (std::size_t g = 0; g < regions; ++g) {
      const std::size_t mask = g + 1;
      if (counts[g] && !key.overlap.empty()) key.overlap += ' ';
      if (counts[g]) key.overlap += region_name(mask, k) + ":" + std::to_string(counts[g]);
      for (std::size_t c = 0; c < counts[g]; ++c, ++next)
        for (int i = 0; i < k; ++i)
          if (mask >> i & 1) parts[static_cast<std::size_t>(i)].push_back(next);
    }
    if (key.overlap.empty()) key.overlap = "-";
    for (int i = 0; i < k; ++i) key.sizes[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)].size();
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(s)};
    std::mt19937_64 rng(seq);
    std::set<std::string> seen;
    for (std::size_t b = 0; b < budget; ++b) {
      std::optional<KConfiguration> c;
      for (int tries = 0; tries < 20 && !c; ++tries) c = draw(r, options.trunc_n, parts, rng);
      if (!c) continue;
      if (seen.insert(json(*c).dump()).second) out.emplace_back(key, std::move(*c));
    }
  }
  return out;
}

namespace {

void tally(std::map<SurveyKey, SurveyRow>& rows, const SurveyKey& key, FrugalOutcome o) {
  auto& row = rows[key];
  row.key = key;
  ++row.configs;
  if (o == FrugalOutcome::kSuccess) ++row.success;
  if (o == FrugalOutcome::kNoAmalgam) ++row.no_amalgam;
  if (o == FrugalOutcome::kFrugalImpossible) ++row.frugal_impossible;
}

std::vector<SurveyRow> values(const std::map<SurveyKey, SurveyRow>& rows) {
  std::vector<SurveyRow> out;
  for (const auto& [k, v] : rows) out.push_back(v);
  return out;
}

bool same_rows(const std::vector<SurveyRow>& a, const std::vector<SurveyRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].key != b[i].key || a[i].configs != b[i].configs || a[i].success != b[i].success ||
        a[i].no_amalgam != b[i].no_amalgam || a[i].frugal_impossible != b[i].frugal_impossible)
      return false;
  return true;
}

}  // namespace

Survey survey_k_disjoint_ap(int r, int k, std::size_t bound, std::size_t budget, const SurveyOptions& options) {
  Survey s;
  s.seed = options.seed;
  std::map<SurveyKey, SurveyRow> rows, oracle_rows;
  json bad_success, bad_oracle;
  for (const auto& [key, config] : survey_configurations(r, k, bound, budget, options)) {
    KrStructure n;
    const FrugalOutcome o = run_frugal(config, &n);
    tally(rows, key, o);
    if (!options.oracle) continue;
    std::vector<Reach> all;
    FrugalOutcome expect = FrugalOutcome::kFrugalImpossible;
    try {
      all = frugal_completions(config);
      expect = all.empty() ? FrugalOutcome::kNoAmalgam : FrugalOutcome::kSuccess;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFrugalImpossible) throw;
    }
    tally(oracle_rows, key, expect);
    if (expect != o && bad_oracle.is_null()) bad_oracle = {{"config", config}, {"search", to_string(o)}, {"oracle", to_string(expect)}};
    if (o != FrugalOutcome::kSuccess || !bad_success.is_null()) continue;
    std::string why;
    if (n.m.universe() != config.union_universe()) why = "universe is not the union";
    for (const auto& x : config.members) {
      if (!why.empty()) break;
      if (x.m.size() >= n.m.size()) why = "a member is not proper";
      const auto& u = x.m.universe();
      if (!(restrict_to(n.m, {u.begin(), u.end()}) == x.m)) why = "restriction differs from a member";
    }
    if (why.empty() && max_independent_size(n, static_cast<std::size_t>(r) + 2) > static_cast<std::size_t>(r) + 1)
      why = "independent (r+2)-set";
    if (why.empty() && !check_Kr0_membership(n).passed()) why = "amalgam fails membership";
    if (why.empty() && std::find(all.begin(), all.end(), reach_of(n, cross_tuples(config))) == all.end())
      why = "oracle does not list the amalgam";
    if (!why.empty()) bad_success = {{"config", config}, {"why", why}};
  }
  s.rows = values(rows);
  if (options.oracle) {
    s.oracle_rows = values(oracle_rows);
    s.report.add("survey.oracle", same_rows(s.rows, s.oracle_rows) && bad_oracle.is_null(),
                 bad_oracle.is_null() ? "" : "search and oracle disagree", bad_oracle);
    s.report.add("survey.successes", bad_success.is_null(), bad_success.is_null() ? "" : bad_success["why"].get<std::string>(),
                 bad_success);
  }
  return s;
}

namespace {

std::string sizes_text(const std::vector<std::size_t>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "/" : "") + std::to_string(sizes[i]);
  return s;
}

}  // namespace

std::string survey_csv(const std::vector<SurveyRow>& rows) {
  std::ostringstream out;
  out << "r,k,sizes,overlap,configs,success,no_amalgam,frugal_impossible\n";
  for (const auto& row : rows)
    out << row.key.r << ',' << row.key.k << ',' << sizes_text(row.key.sizes) << ',' << row.key.overlap << ','
        << row.configs << ',' << row.success << ',' << row.no_amalgam << ',' << row.frugal_impossible << '\n';
  return out.str();
}

std::string survey_pretty(const std::vector<SurveyRow>& rows) {
  std::vector<std::vector<std::string>> cells{{"r", "k", "sizes", "overlap", "configs", "success", "no_amalgam", "frugal_impossible"}};
  for (const auto& row : rows)
    cells.push_back({std::to_string(row.key.r), std::to_string(row.key.k), sizes_text(row.key.sizes), row.key.overlap,
                     std::to_string(row.configs), std::to_string(row.success), std::to_string(row.no_amalgam),
                     std::to_string(row.frugal_impossible)});
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << (i == 3 ? std::left : std::right) << line[i];
    out << '\n';
  }
  return out.str();
}

void to_json(json& j, const KrStructure& m) {
  j = {{"schema_version", kSchemaVersion}, {"kind", "kr"}, {"r", m.r}, {"structure", m.m}};
}

void from_json(const json& j, KrStructure& m) {
  require_schema(j);
  try {
    m.r = j.at("r").get<int>();
    m.m = j.at("structure").get<FiniteStructure>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("kr structure: ") + e.what());
  }
  if (!m.m.vocabulary().index_bound() || !(m.m.vocabulary() == kr_vocabulary(m.r, *m.m.vocabulary().index_bound())))
    throw Error(ErrorCode::kVocabularyMismatch, "kr structure: vocabulary is not R0..R{N-1}, f0..f{N-1}");
}

void to_json(json& j, const KConfiguration& c) {
  j = {{"schema_version", kSchemaVersion}, {"kind", "kr_config"}, {"members", c.members}};
}

void from_json(const json& j, KConfiguration& c) {
  require_schema(j);
  c.members.clear();
  try {
    for (const auto& x : j.at("members")) c.members.push_back(x.get<KrStructure>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("kr configuration: ") + e.what());
  }
}

void to_json(json& j, const SurveyRow& row) {
  j = {{"r", row.key.r},
       {"k", row.key.k},
       {"sizes", row.key.sizes},
       {"overlap", row.key.overlap},
       {"configs", row.configs},
       {"success", row.success},
       {"no_amalgam", row.no_amalgam},
       {"frugal_impossible", row.frugal_impossible}};
}

void to_json(json& j, const Survey& s) {
  j = {{"seed", s.seed}, {"rows", s.rows}, {"report", s.report}};
  if (!s.oracle_rows.empty()) j["oracle_rows"] = s.oracle_rows;
}

}  // namespace fraisse
