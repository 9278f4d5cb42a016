#include "fraisse/engine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

namespace {

Embedding identity_on(const FiniteStructure& a) { return Embedding{a.universe(), a.universe()}; }

std::map<ElemId, ElemId> as_map(const Embedding& e) {
  std::map<ElemId, ElemId> out;
  for (std::size_t i = 0; i < e.source_universe.size(); ++i) out[e.source_universe[i]] = e.image[i];
  return out;
}

std::string dump(const FiniteStructure& m) { return nlohmann::json(m).dump(); }

void sort_members(std::vector<FiniteStructure>& ms) {
  std::vector<std::pair<std::pair<std::size_t, std::string>, FiniteStructure>> keyed;
  keyed.reserve(ms.size());
  for (auto& m : ms) keyed.push_back({{m.size(), dump(m)}, std::move(m)});
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  ms.clear();
  for (auto& [k, m] : keyed) ms.push_back(std::move(m));
}

// All tuples of the given arity over elems, in lexicographic order.
std::vector<Tuple> all_tuples(const std::vector<ElemId>& elems, int arity) {
  std::vector<Tuple> out;
  Tuple t(static_cast<std::size_t>(arity));
  std::vector<std::size_t> idx(t.size(), 0);
  if (elems.empty() && arity > 0) return out;
  while (true) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = elems[idx[i]];
    out.push_back(t);
    std::size_t k = t.size();
    while (k > 0 && ++idx[k - 1] == elems.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

// Relabels d so that left's elements keep their ids; the rest get fresh ids
// above everything left uses, in d's order.
Amalgam normalize(const FiniteStructure& left, const FiniteStructure& right, const FiniteStructure& d,
                  const Embedding& left_to_d, const Embedding& right_to_d) {
  std::map<ElemId, ElemId> ids;
  for (std::size_t i = 0; i < left_to_d.source_universe.size(); ++i) ids[left_to_d.image[i]] = left_to_d.source_universe[i];
  ElemId next = left.fresh_id();
  for (ElemId e : d.universe())
    if (!ids.contains(e)) ids[e] = next++;
  Amalgam out{relabel(d, ids), Embedding{right.universe(), {}}};
  for (ElemId r : right.universe()) out.right_to_d.image.push_back(ids.at(right_to_d(r)));
  return out;
}

}  // namespace

void sort_by_size_and_form(std::vector<FiniteStructure>& ms) { sort_members(ms); }

std::vector<FiniteStructure> AmalgamationClass::members(std::size_t bound) const {
  const Vocabulary& v = vocabulary();
  if (!v.functions().empty())
    throw Error(ErrorCode::kEnumerationOverflow, name() + ": default enumeration is relational only");
  std::vector<FiniteStructure> out;
  std::set<std::string> seen;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::vector<ElemId> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<ElemId>(i);
    std::vector<std::pair<std::size_t, Tuple>> slots;
    for (std::size_t r = 0; r < v.relations().size(); ++r)
      for (auto& t : all_tuples(u, v.relations()[r].arity)) slots.push_back({r, t});
    if (slots.size() > 24)
      throw Error(ErrorCode::kEnumerationOverflow,
                  name() + ": size " + std::to_string(n) + " needs " + std::to_string(slots.size()) + " tuple bits");
    const std::size_t nc = v.constants().size();
    if (nc > 0 && n == 0) continue;
    std::size_t const_choices = 1;
    for (std::size_t c = 0; c < nc; ++c) const_choices *= n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      for (std::size_t cc = 0; cc < const_choices; ++cc) {
        FiniteStructure m(v);
        for (ElemId e : u) m.add_element(e);
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (mask >> s & 1) m.add_tuple(slots[s].first, slots[s].second);
        std::size_t rest = cc;
        for (std::size_t c = 0; c < nc; ++c) {
          m.set_constant(c, static_cast<ElemId>(rest % n));
          rest /= n;
        }
        if (!contains(m)) continue;
        FiniteStructure canon = canonical_form(m);
        if (seen.insert(dump(canon)).second) out.push_back(std::move(canon));
      }
    }
  }
  sort_members(out);
  return out;
}

std::optional<Amalgam> AmalgamationClass::amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                                     const FiniteStructure& right, const Embedding& base_to_left,
                                                     const Embedding& base_to_right) const {
  const std::size_t limit = left.size() + right.size() - base.size();
  for (const auto& d : members(limit)) {
    if (d.size() < std::max(left.size(), right.size())) continue;
    for (const auto& gl : enumerate_embeddings(left, d)) {
      std::map<ElemId, ElemId> fixed;
      for (ElemId a : base.universe()) fixed[base_to_right(a)] = gl(base_to_left(a));
      std::set<ElemId> left_range(gl.image.begin(), gl.image.end());
      std::set<ElemId> base_in_right;
      for (ElemId a : base.universe()) base_in_right.insert(base_to_right(a));
      for (const auto& gr : enumerate_embeddings_extending(right, d, fixed)) {
        bool disjoint = true;
        for (ElemId r : right.universe())
          if (!base_in_right.contains(r) && left_range.contains(gr(r))) disjoint = false;
        if (disjoint) return normalize(left, right, d, gl, gr);
      }
    }
  }
  return std::nullopt;
}

bool AmalgamationClass::is_strong_subset(const FiniteStructure& m, const std::set<ElemId>& s) const {
  return closure(m, s) == s;
}

Amalgam free_amalgam(const FiniteStructure& left, const FiniteStructure& right, const Embedding& base_to_left,
                     const Embedding& base_to_right) {
  FiniteStructure d = left;
  std::map<ElemId, ElemId> to_d;
  for (std::size_t i = 0; i < base_to_right.source_universe.size(); ++i)
    to_d[base_to_right.image[i]] = base_to_left(base_to_right.source_universe[i]);
  ElemId next = left.fresh_id();
  for (ElemId r : right.universe())
    if (!to_d.contains(r)) {
      to_d[r] = next;
      d.add_element(next++);
    }
  const Vocabulary& v = right.vocabulary();
  auto map_tuple = [&](const Tuple& t) {
    Tuple out;
    for (ElemId e : t) out.push_back(to_d.at(e));
    return out;
  };
  for (std::size_t r = 0; r < v.relations().size(); ++r)
    for (const auto& t : right.tuples(r)) d.add_tuple(r, map_tuple(t));
  for (std::size_t f = 0; f < v.functions().size(); ++f)
    for (const auto& [args, val] : right.graph(f)) d.set_value(f, map_tuple(args), to_d.at(val));
  Amalgam out{std::move(d), Embedding{right.universe(), {}}};
  for (ElemId r : right.universe()) out.right_to_d.image.push_back(to_d.at(r));
  return out;
}

PropertyReport check_jep(const AmalgamationClass& k, std::size_t bound) {
  if (bound < 1) throw Error(ErrorCode::kInvalidArgument, "jep bound must be at least 1");
  PropertyReport rep;
  const auto small = k.members(bound);
  // Joint embedding is amalgamation over the empty structure when that is a
  // member; otherwise search the members up to |A| + |B|.
  const FiniteStructure empty(k.vocabulary());
  const bool via_empty = k.contains(empty);
  std::optional<std::vector<FiniteStructure>> large;
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = i; j < small.size(); ++j) {
      ++rep.cases;
      const auto& a = small[i];
      const auto& b = small[j];
      std::optional<FiniteStructure> found;
      if (via_empty) {
        const Embedding none{{}, {}};
        if (auto am = k.amalgamate(empty, a, b, none, none);
            am && k.contains(am->d) && is_embedding(a, am->d, identity_on(a)) && is_embedding(b, am->d, am->right_to_d))
          found = am->d;
      } else {
        if (!large) large = k.members(2 * bound);
        for (const auto& d : *large) {
          if (d.size() > a.size() + b.size()) continue;
          if (!enumerate_embeddings(a, d, 1).empty() && !enumerate_embeddings(b, d, 1).empty()) {
            found = d;
            break;
          }
        }
      }
      if (!found) {
        rep.holds = false;
        rep.counterexample = {{"a", a}, {"b", b}};
        return rep;
      }
      if (rep.witness.is_null()) rep.witness = {{"a", a}, {"b", b}, {"d", *found}};
    }
  }
  return rep;
}

PropertyReport check_disjoint_ap(const AmalgamationClass& k, std::size_t bound) {
  PropertyReport rep;
  const auto ms = k.members(bound);
  for (const auto& a : ms) {
    for (const auto& b : ms) {
      const auto fbs = enumerate_embeddings(a, b);
      if (fbs.empty()) continue;
      for (const auto& c : ms) {
        const auto fcs = enumerate_embeddings(a, c);
        for (const auto& fb : fbs) {
          for (const auto& fc : fcs) {
            ++rep.cases;
            auto fail = [&](const std::string& why) {
              rep.holds = false;
              rep.counterexample = {{"a", a}, {"b", b}, {"c", c}, {"fb", fb}, {"fc", fc}, {"reason", why}};
            };
            auto am = k.amalgamate(a, b, c, fb, fc);
            if (!am) {
              fail("no disjoint amalgam");
              return rep;
            }
            const auto& d = am->d;
            if (!k.contains(d)) {
              fail("amalgam outside the class");
              return rep;
            }
            if (!is_embedding(b, d, identity_on(b)) || !is_embedding(c, d, am->right_to_d)) {
              fail("amalgam maps are not embeddings");
              return rep;
            }
            for (ElemId x : a.universe())
              if (am->right_to_d(fc(x)) != fb(x)) {
                fail("embeddings disagree on the base");
                return rep;
              }
            std::set<ElemId> base_in_c;
            for (ElemId x : a.universe()) base_in_c.insert(fc(x));
            for (ElemId y : c.universe())
              if (!base_in_c.contains(y) && b.contains(am->right_to_d(y))) {
                fail("ranges meet outside the base");
                return rep;
              }
            if (rep.witness.is_null()) rep.witness = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
          }
        }
      }
    }
  }
  return rep;
}

std::vector<ExtensionPair> extension_pairs(const AmalgamationClass& k, std::size_t bound) {
  std::vector<ExtensionPair> out;
  for (const auto& b : k.members(bound)) {
    const auto autos = enumerate_embeddings(b, b);
    const auto& u = b.universe();
    if (u.size() >= 63) throw Error(ErrorCode::kEnumerationOverflow, "member too large for subset enumeration");
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << u.size()); ++mask) {
      std::set<ElemId> s;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (mask >> i & 1) s.insert(u[i]);
      if (!k.is_strong_subset(b, s)) continue;
      bool least = true;
      for (const auto& g : autos) {
        std::set<ElemId> img;
        for (ElemId e : s) img.insert(g(e));
        if (img < s) least = false;
      }
      if (!least) continue;
      FiniteStructure a = restrict_to(b, s);
      if (!k.contains(a)) continue;
      out.push_back({std::move(a), b});
    }
  }
  return out;
}

std::optional<std::size_t> GenericApproximation::saturated_core() const {
  std::vector<bool> clean(generated_through, true);
  for (const auto& t : tasks)
    if (t.status == TaskStatus::kPending && t.chain_index < clean.size()) clean[t.chain_index] = false;
  std::optional<std::size_t> core;
  for (std::size_t i = 0; i < clean.size() && clean[i]; ++i) core = i;
  return core;
}

std::size_t GenericApproximation::pending_count() const {
  return static_cast<std::size_t>(
      std::count_if(tasks.begin(), tasks.end(), [](const Task& t) { return t.status == TaskStatus::kPending; }));
}

namespace {

std::optional<Embedding> find_extension(const ExtensionPair& p, const Embedding& f, const FiniteStructure& m) {
  auto found = enumerate_embeddings_extending(p.b, m, as_map(f), 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

// Embeddings of A into chain[i] that touch an element new at index i.
std::vector<Embedding> fresh_embeddings(const FiniteStructure& a, const GenericApproximation& g, std::size_t i) {
  const FiniteStructure& m = g.chain[i];
  if (i == 0) return enumerate_embeddings(a, m);
  std::vector<Embedding> out;
  if (a.size() == 0) return out;
  const FiniteStructure& prev = g.chain[i - 1];
  for (ElemId e : m.universe()) {
    if (prev.contains(e)) continue;
    for (ElemId s : a.universe())
      for (auto& f : enumerate_embeddings_extending(a, m, {{s, e}})) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Embedding& x, const Embedding& y) { return x.image < y.image; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void generate_tasks(GenericApproximation& g) {
  const std::size_t i = g.generated_through;
  for (std::size_t p = 0; p < g.pairs.size(); ++p) {
    for (auto& f : fresh_embeddings(g.pairs[p].a, g, i)) {
      Task t{i, p, std::move(f), TaskStatus::kPending, std::nullopt, 0};
      if (auto ext = find_extension(g.pairs[p], t.f, g.last())) {
        t.status = TaskStatus::kRealized;
        t.g = std::move(ext);
        t.realized_at = g.chain.size() - 1;
      }
      g.tasks.push_back(std::move(t));
    }
  }
  ++g.generated_through;
}

}  // namespace

GenericApproximation build_generic(const AmalgamationClass& k, std::size_t steps, const FiniteStructure& seed,
                                   const GenericOptions& options) {
  if (!k.contains(seed)) throw Error(ErrorCode::kNotMember, "seed is not a member of " + k.name());
  GenericApproximation g;
  g.bound = options.bound;
  g.pairs = extension_pairs(k, options.bound);
  g.chain.push_back(seed);
  std::size_t cursor = 0;
  for (std::size_t step = 0; step < steps;) {
    while (cursor < g.tasks.size() && g.tasks[cursor].status != TaskStatus::kPending) ++cursor;
    if (cursor == g.tasks.size()) {
      if (g.generated_through == g.chain.size()) break;
      generate_tasks(g);
      continue;
    }
    ++step;
    Task& t = g.tasks[cursor];
    const ExtensionPair& p = g.pairs[t.pair];
    if (auto ext = find_extension(p, t.f, g.last())) {
      t.status = TaskStatus::kRealized;
      t.g = std::move(ext);
      t.realized_at = g.chain.size() - 1;
      continue;
    }
    auto am = k.amalgamate(p.a, g.last(), p.b, t.f, identity_on(p.a));
    if (!am || !is_embedding(g.last(), am->d, identity_on(g.last())) || !is_embedding(p.b, am->d, am->right_to_d)) {
      nlohmann::json triple = {{"a", p.a}, {"b", p.b}, {"f", t.f}, {"chain_index", t.chain_index}};
      throw Error(ErrorCode::kAmalgamationFailed, k.name() + " could not amalgamate " + triple.dump());
    }
    g.chain.push_back(std::move(am->d));
    t.status = TaskStatus::kRealized;
    t.g = std::move(am->right_to_d);
    t.realized_at = g.chain.size() - 1;
  }
  return g;
}

void verify_ledger(const GenericApproximation& g) {
  for (std::size_t i = 0; i + 1 < g.chain.size(); ++i)
    if (!is_embedding(g.chain[i], g.chain[i + 1], identity_on(g.chain[i])))
      throw Error(ErrorCode::kInvalidEmbedding, "chain member " + std::to_string(i) + " is not a substructure of the next");
  for (std::size_t n = 0; n < g.tasks.size(); ++n) {
    const Task& t = g.tasks[n];
    const ExtensionPair& p = g.pairs.at(t.pair);
    if (!is_embedding(p.a, g.chain.at(t.chain_index), t.f))
      throw Error(ErrorCode::kInvalidEmbedding, "task " + std::to_string(n) + ": f is not an embedding");
    if (t.status != TaskStatus::kRealized) continue;
    if (!t.g || !is_embedding(p.b, g.chain.at(t.realized_at), *t.g))
      throw Error(ErrorCode::kInvalidEmbedding, "task " + std::to_string(n) + ": g is not an embedding");
    for (ElemId a : p.a.universe())
      if ((*t.g)(a) != t.f(a))
        throw Error(ErrorCode::kInvalidEmbedding, "task " + std::to_string(n) + ": g does not extend f");
  }
}

std::vector<Defect> richness_defect(const FiniteStructure& m, const AmalgamationClass& k, std::size_t bound,
                                    const std::optional<std::set<ElemId>>& core) {
  std::vector<Defect> out;
  if (bound == 0) return out;
  const auto pairs = extension_pairs(k, bound);
  const FiniteStructure domain = core ? restrict_to(m, closure(m, *core)) : m;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (const auto& f : enumerate_embeddings(pairs[p].a, domain))
      if (!find_extension(pairs[p], f, m)) out.push_back({p, f});
  return out;
}

std::optional<Arena> saturation_arena(const GenericApproximation& g, std::size_t depth) {
  // Chain index by which every task of members up to `upto` with |A| <= size
  // is realized.
  auto settle = [&](std::size_t upto, std::size_t size) -> std::optional<std::size_t> {
    if (upto >= g.generated_through) return std::nullopt;
    std::size_t level = upto;
    for (const auto& t : g.tasks) {
      if (t.chain_index > upto || g.pairs[t.pair].a.size() > size) continue;
      if (t.status == TaskStatus::kPending) return std::nullopt;
      level = std::max(level, t.realized_at);
    }
    return level;
  };
  Arena arena;
  std::optional<std::size_t> c = settle(0, 0);
  for (std::size_t j = 1; j <= depth; ++j) {
    if (j > 1) c = c ? settle(*c, j - 1) : std::nullopt;
    if (!c) return std::nullopt;
    const auto& u = g.chain[*c].universe();
    arena.levels.emplace_back(u.begin(), u.end());
  }
  return arena;
}

namespace {

using Key = std::vector<std::int64_t>;

// Generated substructure of a tuple, labelled in discovery order: tuple
// entries first, then constants, then function values, each function's
// argument tuples visited in label order until nothing new appears.
Key atomic_key(const FiniteStructure& m, const Tuple& t) {
  const Vocabulary& v = m.vocabulary();
  std::vector<ElemId> labels;
  std::map<ElemId, std::int64_t> label_of;
  Key key;
  auto label = [&](ElemId e) {
    auto [it, fresh] = label_of.emplace(e, static_cast<std::int64_t>(labels.size()));
    if (fresh) {
      labels.push_back(e);
      if (labels.size() > ClosureOptions{}.element_cap)
        throw Error(ErrorCode::kClosureDiverges, "generated substructure exceeds the element cap");
    }
    return it->second;
  };
  key.push_back(static_cast<std::int64_t>(t.size()));
  for (ElemId e : t) key.push_back(label(e));
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    auto e = m.constant(c);
    key.push_back(e ? label(*e) : -1);
  }
  auto label_tuples = [&](int arity) {
    std::vector<ElemId> idx(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) idx[i] = static_cast<ElemId>(i);
    return all_tuples(idx, arity);
  };
  for (bool grew = !v.functions().empty(); grew;) {
    const std::size_t before = labels.size();
    for (std::size_t f = 0; f < v.functions().size(); ++f)
      for (const auto& lt : label_tuples(v.functions()[f].arity)) {
        Tuple args;
        for (ElemId l : lt) args.push_back(labels[l]);
        if (auto val = m.value(f, args)) label(*val);
      }
    grew = labels.size() != before;
  }
  key.push_back(static_cast<std::int64_t>(labels.size()));
  for (std::size_t f = 0; f < v.functions().size(); ++f)
    for (const auto& lt : label_tuples(v.functions()[f].arity)) {
      Tuple args;
      for (ElemId l : lt) args.push_back(labels[l]);
      auto val = m.value(f, args);
      key.push_back(val ? label_of.at(*val) : -1);
    }
  for (std::size_t r = 0; r < v.relations().size(); ++r)
    for (const auto& lt : label_tuples(v.relations()[r].arity)) {
      Tuple args;
      for (ElemId l : lt) args.push_back(labels[l]);
      key.push_back(m.holds(r, args) ? 1 : 0);
    }
  return key;
}

class Interner {
 public:
  int id(Key k) {
    auto [it, fresh] = ids_.emplace(std::move(k), static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::map<Key, int> ids_;
};

// Rank-r game types of tuples, with moves drawn from the arena level that
// matches the tuple length. Equal rank-r types of the empty tuple mean the
// duplicator survives r rounds.
class GameTypes {
 public:
  GameTypes(const FiniteStructure& m, const Arena& arena, Interner& interner)
      : m_(m), arena_(arena), interner_(interner) {}

  int type(const Tuple& t, std::size_t rounds) {
    auto memo_key = std::make_pair(rounds, t);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    Key k{-1, static_cast<std::int64_t>(rounds), interner_.id(atomic_key(m_, t))};
    if (rounds > 0) {
      std::set<int> children;
      Tuple next = t;
      next.push_back(0);
      for (ElemId x : moves(t.size())) {
        next.back() = x;
        children.insert(type(next, rounds - 1));
      }
      k.insert(k.end(), children.begin(), children.end());
    }
    int id = interner_.id(std::move(k));
    memo_.emplace(std::move(memo_key), id);
    return id;
  }

 private:
  std::vector<ElemId> moves(std::size_t played) const {
    if (arena_.levels.empty()) return m_.universe();
    const auto& level = arena_.levels[std::min(played, arena_.levels.size() - 1)];
    return {level.begin(), level.end()};
  }

  const FiniteStructure& m_;
  const Arena& arena_;
  Interner& interner_;
  std::map<std::pair<std::size_t, Tuple>, int> memo_;
};

// Trailing decimal index of a symbol name, if any.
std::optional<int> symbol_index(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size()) return std::nullopt;
  return std::stoi(name.substr(i));
}

}  // namespace

bool back_and_forth_check(const FiniteStructure& m, const FiniteStructure& n, std::size_t depth, const Arena& arena_m,
                          const Arena& arena_n) {
  if (!(m.vocabulary() == n.vocabulary())) return false;
  Interner interner;
  GameTypes tm(m, arena_m, interner);
  GameTypes tn(n, arena_n, interner);
  return tm.type({}, depth) == tn.type({}, depth);
}

bool satisfies(const FiniteStructure& m, const std::vector<ElemId>& tuple, const nlohmann::json& formula) {
  const Vocabulary& v = m.vocabulary();
  auto pick = [&](const nlohmann::json& positions) {
    Tuple t;
    for (const auto& p : positions) t.push_back(tuple.at(p.get<std::size_t>()));
    return t;
  };
  for (const auto& lit : formula) {
    const std::string kind = lit.at("kind");
    const std::string sym = lit.at("symbol");
    if (kind == "rel") {
      auto r = v.relation_index(sym);
      if (!r || m.holds(*r, pick(lit.at("args"))) != lit.at("holds").get<bool>()) return false;
    } else if (kind == "fun") {
      auto f = v.function_index(sym);
      if (!f) return false;
      auto val = m.value(*f, pick(lit.at("args")));
      const auto& want = lit.at("value");
      if (want.is_null() ? val.has_value() : (!val || *val != tuple.at(want.get<std::size_t>()))) return false;
    } else if (kind == "const") {
      auto c = v.constant_index(sym);
      if (!c || m.constant(*c) != tuple.at(lit.at("position").get<std::size_t>())) return false;
    } else {
      throw Error(ErrorCode::kParseError, "unknown literal kind " + kind);
    }
  }
  return true;
}

SeparabilityResult separability_witness(const AmalgamationClass& k, const FiniteStructure& a,
                                        const std::vector<ElemId>& tuple, std::size_t size_bound,
                                        std::optional<int> formula_index_bound) {
  if (!k.contains(a)) throw Error(ErrorCode::kNotMember, "structure is not a member of " + k.name());
  if (std::set<ElemId>(tuple.begin(), tuple.end()) != std::set<ElemId>(a.universe().begin(), a.universe().end()) ||
      tuple.size() != a.size())
    throw Error(ErrorCode::kInvalidArgument, "tuple must list the universe without repeats");
  const Vocabulary& v = a.vocabulary();
  auto kept = [&](const std::string& sym) {
    auto idx = symbol_index(sym);
    return !formula_index_bound || !idx || *idx < *formula_index_bound;
  };
  std::map<ElemId, std::size_t> pos;
  for (std::size_t i = 0; i < tuple.size(); ++i) pos[tuple[i]] = i;
  std::vector<ElemId> positions(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) positions[i] = static_cast<ElemId>(i);

  SeparabilityResult res;
  res.formula = nlohmann::json::array();
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    if (!kept(v.relations()[r].name)) continue;
    for (const auto& pt : all_tuples(positions, v.relations()[r].arity)) {
      Tuple t;
      for (ElemId p : pt) t.push_back(tuple[p]);
      res.formula.push_back({{"kind", "rel"}, {"symbol", v.relations()[r].name}, {"args", pt}, {"holds", a.holds(r, t)}});
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    if (!kept(v.functions()[f].name)) continue;
    for (const auto& pt : all_tuples(positions, v.functions()[f].arity)) {
      Tuple t;
      for (ElemId p : pt) t.push_back(tuple[p]);
      auto val = a.value(f, t);
      res.formula.push_back({{"kind", "fun"},
                             {"symbol", v.functions()[f].name},
                             {"args", pt},
                             {"value", val ? nlohmann::json(pos.at(*val)) : nlohmann::json(nullptr)}});
    }
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c)
    if (kept(v.constants()[c]))
      res.formula.push_back({{"kind", "const"}, {"symbol", v.constants()[c]}, {"position", pos.at(*a.constant(c))}});

  if (size_bound < a.size()) return res;
  for (const auto& b : k.members(size_bound)) {
    if (b.size() != a.size()) continue;
    // Every injective tuple of b that satisfies the formula must be a copy.
    std::vector<ElemId> bt(tuple.size());
    std::vector<bool> used(b.size(), false);
    bool ok = true;
    auto search = [&](auto&& self, std::size_t i) -> void {
      if (!ok) return;
      if (i == bt.size()) {
        ++res.tuples_checked;
        if (!satisfies(b, bt, res.formula)) return;
        if (!is_embedding(a, b, Embedding{tuple, bt})) {
          ok = false;
          res.counterexample = {{"member", b}, {"tuple", bt}};
        }
        return;
      }
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        bt[i] = b.universe()[j];
        self(self, i + 1);
        used[j] = false;
      }
    };
    search(search, 0);
    if (!ok) return res;
  }
  res.verdict = Separability::kCertified;
  return res;
}

void to_json(nlohmann::json& j, const GenericApproximation& g) {
  j = nlohmann::json::object();
  j["schema_version"] = kSchemaVersion;
  j["bound"] = g.bound;
  j["chain"] = g.chain;
  auto pairs = nlohmann::json::array();
  for (const auto& p : g.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}});
  j["pairs"] = std::move(pairs);
  auto tasks = nlohmann::json::array();
  for (const auto& t : g.tasks) {
    nlohmann::json e = {{"chain_index", t.chain_index},
                        {"pair", t.pair},
                        {"f", t.f},
                        {"status", t.status == TaskStatus::kRealized ? "realized" : "pending"}};
    if (t.g) {
      e["g"] = *t.g;
      e["realized_at"] = t.realized_at;
    }
    tasks.push_back(std::move(e));
  }
  j["tasks"] = std::move(tasks);
  j["generated_through"] = g.generated_through;
}

}  // namespace fraisse
