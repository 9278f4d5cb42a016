#include "fraisse/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "fraisse/error.hpp"

namespace fraisse {

// ---------------------------------------------------------------- Vocabulary

void Vocabulary::require_fresh(const std::string& name) const {
  if (relation_index(name) || function_index(name) || constant_index(name))
    throw Error(ErrorCode::kInvalidArgument, "duplicate symbol '" + name + "'");
}

Vocabulary& Vocabulary::add_relation(std::string name, int arity) {
  require_fresh(name);
  if (arity < 0) throw Error(ErrorCode::kInvalidArgument, "negative arity for " + name);
  relations_.push_back({std::move(name), arity});
  return *this;
}

Vocabulary& Vocabulary::add_function(std::string name, int arity, bool partial) {
  require_fresh(name);
  if (arity < 0) throw Error(ErrorCode::kInvalidArgument, "negative arity for " + name);
  functions_.push_back({std::move(name), arity, partial});
  return *this;
}

Vocabulary& Vocabulary::add_constant(std::string name) {
  require_fresh(name);
  constants_.push_back(std::move(name));
  return *this;
}

Vocabulary& Vocabulary::set_index_bound(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "index bound must be >= 1");
  index_bound_ = n;
  return *this;
}

std::optional<std::size_t> Vocabulary::relation_index(const std::string& name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::function_index(const std::string& name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::constant_index(const std::string& name) const {
  for (std::size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i] == name) return i;
  return std::nullopt;
}

// ----------------------------------------------------------- FiniteStructure

FiniteStructure::FiniteStructure(Vocabulary vocab)
    : vocab_(std::move(vocab)),
      relations_(vocab_.relations().size()),
      functions_(vocab_.functions().size()),
      constants_(vocab_.constants().size()) {}

bool FiniteStructure::contains(ElemId e) const {
  return std::binary_search(universe_.begin(), universe_.end(), e);
}

void FiniteStructure::add_element(ElemId e) {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
  if (it == universe_.end() || *it != e) universe_.insert(it, e);
}

ElemId FiniteStructure::fresh_id() const { return universe_.empty() ? 0 : universe_.back() + 1; }

void FiniteStructure::add_tuple(std::size_t relation, Tuple t) {
  if (relation >= relations_.size()) throw Error(ErrorCode::kInvalidArgument, "no such relation");
  if (static_cast<int>(t.size()) != vocab_.relations()[relation].arity)
    throw Error(ErrorCode::kInvalidArgument, "arity mismatch for " + vocab_.relations()[relation].name);
  relations_[relation].insert(std::move(t));
}

void FiniteStructure::add_tuple(const std::string& relation, Tuple t) {
  auto idx = vocab_.relation_index(relation);
  if (!idx) throw Error(ErrorCode::kInvalidArgument, "unknown relation " + relation);
  add_tuple(*idx, std::move(t));
}

bool FiniteStructure::holds(std::size_t relation, const Tuple& t) const {
  return relations_.at(relation).contains(t);
}

void FiniteStructure::set_value(std::size_t function, Tuple args, ElemId value) {
  if (function >= functions_.size()) throw Error(ErrorCode::kInvalidArgument, "no such function");
  if (static_cast<int>(args.size()) != vocab_.functions()[function].arity)
    throw Error(ErrorCode::kInvalidArgument, "arity mismatch for " + vocab_.functions()[function].name);
  functions_[function][std::move(args)] = value;
}

void FiniteStructure::set_value(const std::string& function, Tuple args, ElemId value) {
  auto idx = vocab_.function_index(function);
  if (!idx) throw Error(ErrorCode::kInvalidArgument, "unknown function " + function);
  set_value(*idx, std::move(args), value);
}

std::optional<ElemId> FiniteStructure::value(std::size_t function, const Tuple& args) const {
  const auto& g = functions_.at(function);
  auto it = g.find(args);
  if (it == g.end()) return std::nullopt;
  return it->second;
}

void FiniteStructure::set_constant(std::size_t constant, ElemId e) { constants_.at(constant) = e; }

void FiniteStructure::set_constant(const std::string& constant, ElemId e) {
  auto idx = vocab_.constant_index(constant);
  if (!idx) throw Error(ErrorCode::kInvalidArgument, "unknown constant " + constant);
  set_constant(*idx, e);
}

namespace {

// Calls visit(t) for every tuple of the given arity over `elems`.
template <class Visit>
void for_each_tuple(const std::vector<ElemId>& elems, int arity, Visit&& visit) {
  Tuple t(static_cast<std::size_t>(arity));
  if (arity == 0) {
    visit(t);
    return;
  }
  if (elems.empty()) return;
  std::vector<std::size_t> pos(static_cast<std::size_t>(arity), 0);
  while (true) {
    for (std::size_t i = 0; i < pos.size(); ++i) t[i] = elems[pos[i]];
    visit(t);
    std::size_t k = pos.size();
    while (k > 0) {
      --k;
      if (++pos[k] < elems.size()) break;
      pos[k] = 0;
      if (k == 0) return;
    }
  }
}

}  // namespace

void FiniteStructure::validate() const {
  auto in_universe = [&](const Tuple& t) {
    return std::all_of(t.begin(), t.end(), [&](ElemId e) { return contains(e); });
  };
  for (std::size_t r = 0; r < relations_.size(); ++r)
    for (const auto& t : relations_[r])
      if (!in_universe(t))
        throw Error(ErrorCode::kInvalidArgument, "relation " + vocab_.relations()[r].name + " leaves the universe");
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    for (const auto& [args, v] : functions_[f])
      if (!in_universe(args) || !contains(v))
        throw Error(ErrorCode::kInvalidArgument, "function " + vocab_.functions()[f].name + " leaves the universe");
    const auto& sym = vocab_.functions()[f];
    if (!sym.partial) {
      bool total = true;
      for_each_tuple(universe_, sym.arity, [&](const Tuple& t) {
        if (!functions_[f].contains(t)) total = false;
      });
      if (!total) throw Error(ErrorCode::kInvalidArgument, "total function " + sym.name + " is not defined everywhere");
    }
  }
  for (std::size_t c = 0; c < constants_.size(); ++c)
    if (!constants_[c] || !contains(*constants_[c]))
      throw Error(ErrorCode::kInvalidArgument, "constant " + vocab_.constants()[c] + " unassigned");
}

// ------------------------------------------------------------------ closure

std::set<ElemId> closure(const FiniteStructure& m, const std::set<ElemId>& generators,
                         const ClosureOptions& options) {
  for (auto g : generators)
    if (!m.contains(g)) throw Error(ErrorCode::kInvalidArgument, "generator outside the universe");
  std::set<ElemId> closed = generators;
  for (std::size_t c = 0; c < m.vocabulary().constants().size(); ++c)
    if (auto v = m.constant(c)) closed.insert(*v);
  // Semi-naive fixpoint: only entries whose arguments are all closed fire.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t f = 0; f < m.vocabulary().functions().size(); ++f) {
      for (const auto& [args, v] : m.graph(f)) {
        if (closed.contains(v)) continue;
        if (std::all_of(args.begin(), args.end(), [&](ElemId e) { return closed.contains(e); })) {
          closed.insert(v);
          changed = true;
          if (closed.size() > options.element_cap)
            throw Error(ErrorCode::kClosureDiverges,
                        "closure exceeded " + std::to_string(options.element_cap) + " elements");
        }
      }
    }
  }
  return closed;
}

FiniteStructure restrict_to(const FiniteStructure& m, const std::set<ElemId>& elements) {
  FiniteStructure out(m.vocabulary());
  for (auto e : elements) out.add_element(e);
  auto inside = [&](const Tuple& t) {
    return std::all_of(t.begin(), t.end(), [&](ElemId e) { return elements.contains(e); });
  };
  for (std::size_t r = 0; r < m.vocabulary().relations().size(); ++r)
    for (const auto& t : m.tuples(r))
      if (inside(t)) out.add_tuple(r, t);
  for (std::size_t f = 0; f < m.vocabulary().functions().size(); ++f)
    for (const auto& [args, v] : m.graph(f))
      if (inside(args) && elements.contains(v)) out.set_value(f, args, v);
  for (std::size_t c = 0; c < m.vocabulary().constants().size(); ++c)
    if (auto v = m.constant(c); v && elements.contains(*v)) out.set_constant(c, *v);
  return out;
}

FiniteStructure generate_substructure(const FiniteStructure& m, const std::set<ElemId>& generators,
                                      const ClosureOptions& options) {
  return restrict_to(m, closure(m, generators, options));
}

// -------------------------------------------------------------- embeddings

ElemId Embedding::operator()(ElemId e) const {
  auto it = std::lower_bound(source_universe.begin(), source_universe.end(), e);
  if (it == source_universe.end() || *it != e) throw Error(ErrorCode::kInvalidArgument, "element not in embedding domain");
  return image[static_cast<std::size_t>(it - source_universe.begin())];
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const FiniteStructure& a, const FiniteStructure& b, const std::map<ElemId, ElemId>& fixed,
                  std::size_t limit)
      : a_(a), b_(b), fixed_(fixed), limit_(limit) {
    if (!(a.vocabulary() == b.vocabulary()))
      throw Error(ErrorCode::kVocabularyMismatch, "structures use different vocabularies");
    const auto& ua = a.universe();
    for (std::size_t i = 0; i < ua.size(); ++i) pos_of_[ua[i]] = i;
    image_.assign(ua.size(), 0);
    assigned_.assign(ua.size(), false);
    const auto& v = a.vocabulary();
    a_rel_.resize(v.relations().size());
    b_rel_.resize(v.relations().size());
    for (std::size_t r = 0; r < v.relations().size(); ++r) {
      for (const auto& t : a.tuples(r))
        for (auto e : std::set<ElemId>(t.begin(), t.end())) a_rel_[r][e].push_back(&t);
      for (const auto& t : b.tuples(r))
        for (auto e : std::set<ElemId>(t.begin(), t.end())) b_rel_[r][e].push_back(&t);
    }
    a_fun_.resize(v.functions().size());
    b_fun_.resize(v.functions().size());
    for (std::size_t f = 0; f < v.functions().size(); ++f) {
      for (const auto& entry : a.graph(f)) {
        std::set<ElemId> touched(entry.first.begin(), entry.first.end());
        touched.insert(entry.second);
        for (auto e : touched) a_fun_[f][e].push_back(&entry);
      }
      for (const auto& entry : b.graph(f))
        for (auto e : std::set<ElemId>(entry.first.begin(), entry.first.end())) b_fun_[f][e].push_back(&entry);
    }
  }

  std::vector<Embedding> run() {
    if (a_.size() <= b_.size()) extend(0);
    return std::move(results_);
  }

 private:
  using Entry = std::pair<const Tuple, ElemId>;
  template <class T>
  using Index = std::vector<std::map<ElemId, std::vector<const T*>>>;

  template <class T>
  static const std::vector<const T*>& lookup(const Index<T>& idx, std::size_t k, ElemId e) {
    static const std::vector<const T*> kEmpty;
    auto it = idx[k].find(e);
    return it == idx[k].end() ? kEmpty : it->second;
  }

  bool is_assigned(ElemId src) const { return assigned_[pos_of_.at(src)]; }
  ElemId img(ElemId src) const { return image_[pos_of_.at(src)]; }

  bool all_assigned(const Tuple& t) const {
    return std::all_of(t.begin(), t.end(), [&](ElemId e) { return is_assigned(e); });
  }

  Tuple map_tuple(const Tuple& t) const {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = img(t[i]);
    return out;
  }

  std::optional<Tuple> pull_back(const Tuple& t) const {
    Tuple pre(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto it = preimage_.find(t[i]);
      if (it == preimage_.end()) return std::nullopt;
      pre[i] = it->second;
    }
    return pre;
  }

  bool consistent(ElemId src) const {
    const auto& va = a_.vocabulary();
    const ElemId tgt = img(src);
    for (std::size_t r = 0; r < va.relations().size(); ++r) {
      for (const Tuple* t : lookup(a_rel_, r, src))
        if (all_assigned(*t) && !b_.holds(r, map_tuple(*t))) return false;
      for (const Tuple* t : lookup(b_rel_, r, tgt))
        if (auto pre = pull_back(*t); pre && !a_.holds(r, *pre)) return false;
    }
    for (std::size_t f = 0; f < va.functions().size(); ++f) {
      for (const Entry* e : lookup(a_fun_, f, src)) {
        if (!all_assigned(e->first)) continue;
        auto bv = b_.value(f, map_tuple(e->first));
        if (!bv) return false;
        if (is_assigned(e->second) ? *bv != img(e->second) : preimage_.contains(*bv)) return false;
      }
      // Definedness is reflected as well, which matters for partial functions.
      for (const Entry* e : lookup(b_fun_, f, tgt)) {
        auto pre = pull_back(e->first);
        if (!pre) continue;
        auto av = a_.value(f, *pre);
        if (!av) return false;
        if (is_assigned(*av) && img(*av) != e->second) return false;
      }
    }
    for (std::size_t c = 0; c < va.constants().size(); ++c) {
      auto ca = a_.constant(c);
      if (ca && *ca == src && b_.constant(c) != tgt) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (results_.size() >= limit_) return;
    const auto& ua = a_.universe();
    if (depth == ua.size()) {
      results_.push_back(Embedding{ua, image_});
      return;
    }
    const ElemId src = ua[depth];
    auto try_target = [&](ElemId tgt) {
      if (preimage_.contains(tgt)) return;
      image_[depth] = tgt;
      assigned_[depth] = true;
      preimage_[tgt] = src;
      if (consistent(src)) extend(depth + 1);
      preimage_.erase(tgt);
      assigned_[depth] = false;
    };
    if (auto it = fixed_.find(src); it != fixed_.end()) {
      if (b_.contains(it->second)) try_target(it->second);
      return;
    }
    for (ElemId tgt : b_.universe()) {
      try_target(tgt);
      if (results_.size() >= limit_) return;
    }
  }

  const FiniteStructure& a_;
  const FiniteStructure& b_;
  const std::map<ElemId, ElemId>& fixed_;
  std::size_t limit_;
  std::map<ElemId, std::size_t> pos_of_;
  std::vector<ElemId> image_;
  std::vector<bool> assigned_;
  std::map<ElemId, ElemId> preimage_;
  std::vector<Embedding> results_;
  Index<Tuple> a_rel_, b_rel_;
  Index<Entry> a_fun_, b_fun_;
};

}  // namespace

std::vector<Embedding> enumerate_embeddings_extending(const FiniteStructure& a, const FiniteStructure& b,
                                                      const std::map<ElemId, ElemId>& fixed, std::size_t limit) {
  return EmbeddingSearch(a, b, fixed, limit).run();
}

std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a, const FiniteStructure& b, std::size_t limit) {
  static const std::map<ElemId, ElemId> kNone;
  return EmbeddingSearch(a, b, kNone, limit).run();
}

bool is_embedding(const FiniteStructure& a, const FiniteStructure& b, const Embedding& e) {
  if (!(a.vocabulary() == b.vocabulary())) throw Error(ErrorCode::kVocabularyMismatch, "vocabularies differ");
  if (e.source_universe != a.universe() || e.image.size() != a.size()) return false;
  std::map<ElemId, ElemId> pre;
  for (std::size_t i = 0; i < e.image.size(); ++i) {
    if (!b.contains(e.image[i])) return false;
    if (!pre.emplace(e.image[i], a.universe()[i]).second) return false;
  }
  auto fwd = [&](const Tuple& t) {
    Tuple o(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) o[i] = e(t[i]);
    return o;
  };
  auto back = [&](const Tuple& t) -> std::optional<Tuple> {
    Tuple o(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto it = pre.find(t[i]);
      if (it == pre.end()) return std::nullopt;
      o[i] = it->second;
    }
    return o;
  };
  const auto& v = a.vocabulary();
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    for (const auto& t : a.tuples(r))
      if (!b.holds(r, fwd(t))) return false;
    for (const auto& t : b.tuples(r))
      if (auto p = back(t); p && !a.holds(r, *p)) return false;
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    for (const auto& [args, val] : a.graph(f))
      if (b.value(f, fwd(args)) != e(val)) return false;
    for (const auto& [args, val] : b.graph(f))
      if (auto p = back(args); p && !a.value(f, *p)) return false;
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    auto ca = a.constant(c);
    if (ca && b.constant(c) != e(*ca)) return false;
  }
  return true;
}

bool is_isomorphic(const FiniteStructure& a, const FiniteStructure& b) {
  if (!(a.vocabulary() == b.vocabulary())) throw Error(ErrorCode::kVocabularyMismatch, "vocabularies differ");
  if (a.size() != b.size()) return false;
  return !enumerate_embeddings(a, b, 1).empty();
}

Embedding compose(const Embedding& first, const Embedding& second) {
  Embedding out{first.source_universe, {}};
  out.image.reserve(first.image.size());
  for (auto e : first.image) out.image.push_back(second(e));
  return out;
}

FiniteStructure relabel(const FiniteStructure& m, const std::map<ElemId, ElemId>& ids) {
  auto map1 = [&](ElemId e) {
    auto it = ids.find(e);
    return it == ids.end() ? e : it->second;
  };
  auto mapt = [&](const Tuple& t) {
    Tuple o(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) o[i] = map1(t[i]);
    return o;
  };
  FiniteStructure out(m.vocabulary());
  for (auto e : m.universe()) out.add_element(map1(e));
  const auto& v = m.vocabulary();
  for (std::size_t r = 0; r < v.relations().size(); ++r)
    for (const auto& t : m.tuples(r)) out.add_tuple(r, mapt(t));
  for (std::size_t f = 0; f < v.functions().size(); ++f)
    for (const auto& [args, val] : m.graph(f)) out.set_value(f, mapt(args), map1(val));
  for (std::size_t c = 0; c < v.constants().size(); ++c)
    if (auto val = m.constant(c)) out.set_constant(c, map1(*val));
  return out;
}

namespace {

std::vector<std::int64_t> diagram_key(const FiniteStructure& m) {
  std::vector<std::int64_t> key;
  key.push_back(static_cast<std::int64_t>(m.size()));
  const auto& v = m.vocabulary();
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    key.push_back(-1);
    for (const auto& t : m.tuples(r))
      for (auto e : t) key.push_back(e);
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    key.push_back(-2);
    for (const auto& [args, val] : m.graph(f)) {
      for (auto e : args) key.push_back(e);
      key.push_back(val);
    }
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    key.push_back(-3);
    key.push_back(m.constant(c) ? static_cast<std::int64_t>(*m.constant(c)) : -4);
  }
  return key;
}

}  // namespace

FiniteStructure canonical_form(const FiniteStructure& m) {
  const auto& u = m.universe();
  std::vector<ElemId> perm(u.size());
  std::iota(perm.begin(), perm.end(), ElemId{0});
  std::optional<FiniteStructure> best;
  std::vector<std::int64_t> best_key;
  do {
    std::map<ElemId, ElemId> ids;
    for (std::size_t i = 0; i < u.size(); ++i) ids[u[i]] = perm[i];
    FiniteStructure cand = relabel(m, ids);
    auto key = diagram_key(cand);
    if (!best || key < best_key) {
      best = std::move(cand);
      best_key = std::move(key);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

}  // namespace fraisse
