#include "fraisse/classes.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "fraisse/error.hpp"

namespace fraisse {

LinearOrderClass::LinearOrderClass() { vocab_.add_relation("lt", 2); }

bool LinearOrderClass::contains(const FiniteStructure& m) const {
  if (!(m.vocabulary() == vocab_)) return false;
  const auto& u = m.universe();
  for (ElemId x : u) {
    if (m.holds(0, {x, x})) return false;
    for (ElemId y : u) {
      if (x != y && m.holds(0, {x, y}) == m.holds(0, {y, x})) return false;
      for (ElemId z : u)
        if (m.holds(0, {x, y}) && m.holds(0, {y, z}) && !m.holds(0, {x, z})) return false;
    }
  }
  return true;
}

FiniteStructure LinearOrderClass::chain(std::size_t n) {
  LinearOrderClass k;
  FiniteStructure m(k.vocab_);
  for (std::size_t i = 0; i < n; ++i) m.add_element(static_cast<ElemId>(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.add_tuple(0, {static_cast<ElemId>(i), static_cast<ElemId>(j)});
  return m;
}

std::vector<FiniteStructure> LinearOrderClass::members(std::size_t bound) const {
  std::vector<FiniteStructure> out;
  for (std::size_t n = 0; n <= bound; ++n) out.push_back(chain(n));
  return out;
}

std::optional<Amalgam> LinearOrderClass::amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                                    const FiniteStructure& right, const Embedding& base_to_left,
                                                    const Embedding& base_to_right) const {
  auto position = [](const FiniteStructure& m, ElemId x) {
    std::size_t below = 0;
    for (ElemId y : m.universe())
      if (m.holds(0, {y, x})) ++below;
    return below;
  };
  std::map<ElemId, ElemId> base_of_right;
  for (ElemId a : base.universe()) base_of_right[base_to_right(a)] = base_to_left(a);
  // (slot in left, new-before-old flag, rank in right) orders everything.
  using Slot = std::tuple<std::size_t, int, std::size_t>;
  std::vector<std::pair<Slot, std::pair<bool, ElemId>>> order;
  for (ElemId l : left.universe()) order.push_back({{position(left, l), 1, 0}, {true, l}});
  for (ElemId r : right.universe()) {
    if (base_of_right.contains(r)) continue;
    std::size_t slot = left.size();
    for (ElemId r2 : right.universe())
      if (base_of_right.contains(r2) && right.holds(0, {r, r2}))
        slot = std::min(slot, position(left, base_of_right.at(r2)));
    order.push_back({{slot, 0, position(right, r)}, {false, r}});
  }
  std::sort(order.begin(), order.end());
  FiniteStructure d(vocab_);
  ElemId next = left.fresh_id();
  std::map<ElemId, ElemId> right_ids = base_of_right;
  std::vector<ElemId> seq;
  for (const auto& [slot, who] : order) {
    ElemId id = who.first ? who.second : next++;
    if (!who.first) right_ids[who.second] = id;
    d.add_element(id);
    seq.push_back(id);
  }
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) d.add_tuple(0, {seq[i], seq[j]});
  Amalgam out{std::move(d), Embedding{right.universe(), {}}};
  for (ElemId r : right.universe()) out.right_to_d.image.push_back(right_ids.at(r));
  return out;
}

GraphClass::GraphClass() { vocab_.add_relation("E", 2); }

bool GraphClass::contains(const FiniteStructure& m) const {
  if (!(m.vocabulary() == vocab_)) return false;
  for (const auto& t : m.tuples(0))
    if (t[0] == t[1] || !m.holds(0, {t[1], t[0]})) return false;
  return true;
}

std::optional<Amalgam> GraphClass::amalgamate(const FiniteStructure&, const FiniteStructure& left,
                                              const FiniteStructure& right, const Embedding& base_to_left,
                                              const Embedding& base_to_right) const {
  return free_amalgam(left, right, base_to_left, base_to_right);
}

CharTwoFieldClass::CharTwoFieldClass() {
  vocab_.add_function("add", 2).add_function("mul", 2).add_constant("zero").add_constant("one");
}

namespace {

unsigned gf_mul(unsigned x, unsigned y, unsigned degree, unsigned modulus) {
  unsigned r = 0;
  for (unsigned i = 0; i < degree; ++i)
    if (y >> i & 1) r ^= x << i;
  for (unsigned i = 2 * degree; i-- > degree;)
    if (r >> i & 1) r ^= modulus << (i - degree);
  return r;
}

}  // namespace

FiniteStructure CharTwoFieldClass::field(unsigned degree) const {
  // Irreducible polynomials x+0 (degree 1 is GF(2) itself), x^2+x+1, x^3+x+1, x^4+x+1.
  static const std::map<unsigned, unsigned> kModulus = {{1, 0b10}, {2, 0b111}, {3, 0b1011}, {4, 0b10011}};
  auto it = kModulus.find(degree);
  if (it == kModulus.end()) throw Error(ErrorCode::kInvalidArgument, "field degree must be 1..4");
  const unsigned q = 1u << degree;
  FiniteStructure m(vocab_);
  for (unsigned x = 0; x < q; ++x) m.add_element(x);
  for (unsigned x = 0; x < q; ++x)
    for (unsigned y = 0; y < q; ++y) {
      m.set_value(0, {x, y}, x ^ y);
      m.set_value(1, {x, y}, gf_mul(x, y, degree, it->second));
    }
  m.set_constant(0, 0);
  m.set_constant(1, 1);
  return m;
}

bool CharTwoFieldClass::contains(const FiniteStructure& m) const {
  if (!(m.vocabulary() == vocab_) || m.size() < 2) return false;
  const auto& u = m.universe();
  auto add = [&](ElemId x, ElemId y) { return m.value(0, {x, y}); };
  auto mul = [&](ElemId x, ElemId y) { return m.value(1, {x, y}); };
  auto zero = m.constant(0);
  auto one = m.constant(1);
  if (!zero || !one || *zero == *one) return false;
  for (ElemId x : u) {
    if (add(x, *zero) != x || mul(x, *one) != x || add(x, x) != zero) return false;
    bool invertible = x == *zero;
    for (ElemId y : u) {
      auto s = add(x, y);
      auto p = mul(x, y);
      if (!s || !p || s != add(y, x) || p != mul(y, x)) return false;
      if (p == one) invertible = true;
      for (ElemId z : u) {
        auto yz = add(y, z);
        auto ym = mul(y, z);
        if (add(*s, z) != add(x, *yz) || mul(*p, z) != mul(x, *ym)) return false;
        if (mul(x, *yz) != add(*p, *mul(x, z))) return false;
      }
    }
    if (!invertible) return false;
  }
  return true;
}

std::vector<FiniteStructure> CharTwoFieldClass::members(std::size_t bound) const {
  std::vector<FiniteStructure> out;
  for (unsigned d = 1; d <= 4 && (std::size_t{1} << d) <= bound; ++d) out.push_back(field(d));
  return out;
}

ExplicitListClass::ExplicitListClass(std::string name, Vocabulary vocab, std::vector<FiniteStructure> list)
    : name_(std::move(name)), vocab_(std::move(vocab)), list_(std::move(list)) {
  for (const auto& m : list_)
    if (!(m.vocabulary() == vocab_)) throw Error(ErrorCode::kVocabularyMismatch, "listed structure has another vocabulary");
}

bool ExplicitListClass::contains(const FiniteStructure& m) const {
  if (!(m.vocabulary() == vocab_)) return false;
  return std::any_of(list_.begin(), list_.end(), [&](const FiniteStructure& x) { return is_isomorphic(x, m); });
}

std::vector<FiniteStructure> ExplicitListClass::members(std::size_t bound) const {
  std::vector<FiniteStructure> out;
  for (const auto& m : list_)
    if (m.size() <= bound) out.push_back(m);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

ExplicitListClass ExplicitListClass::jep_counterexample() {
  Vocabulary v;
  v.add_relation("P", 1).add_relation("Q", 1).add_constant("c");
  FiniteStructure with_p(v), with_q(v);
  for (auto* m : {&with_p, &with_q}) {
    m->add_element(0);
    m->set_constant(0, 0);
  }
  with_p.add_tuple(0, {0});
  with_q.add_tuple(1, {0});
  return ExplicitListClass("jep_counterexample", v, {with_p, with_q});
}

}  // namespace fraisse
