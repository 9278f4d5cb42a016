#include "fraisse/boolean_algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"

namespace fraisse {

namespace {

void require_width(const AtomSet& x, std::size_t atoms, const char* what) {
  if (x.width() != atoms)
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " has width " + std::to_string(x.width()) +
                                                 ", expected " + std::to_string(atoms));
}

std::vector<AtomSet> dedupe(const std::vector<AtomSet>& xs) {
  std::vector<AtomSet> out;
  for (const auto& x : xs)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

std::uint64_t signature(const std::vector<AtomSet>& ys, std::size_t atom) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (ys[i].test(atom)) s |= std::uint64_t{1} << i;
  return s;
}

}  // namespace

// ------------------------------------------------------------------ algebra

FiniteBooleanAlgebra::FiniteBooleanAlgebra(std::size_t atom_count) : FiniteBooleanAlgebra(atom_count, AtomSet(atom_count)) {}

FiniteBooleanAlgebra::FiniteBooleanAlgebra(std::size_t atom_count, AtomSet designated) : atoms_(atom_count) {
  if (atom_count == 0) throw Error(ErrorCode::kInvalidArgument, "an algebra needs at least one atom");
  set_designated(std::move(designated));
}

void FiniteBooleanAlgebra::set_designated(AtomSet d) {
  require_width(d, atoms_, "designated set");
  designated_ = std::move(d);
}

void FiniteBooleanAlgebra::name(const std::string& label, AtomSet x) {
  require_width(x, atoms_, "named element");
  named_[label] = std::move(x);
}

// --------------------------------------------------------------- embeddings

AtomSet BAEmbedding::apply(const AtomSet& x) const {
  require_width(x, image.size(), "embedding argument");
  AtomSet out(target_atoms);
  for (std::size_t i = x.next(); i != AtomSet::npos; i = x.next(i + 1)) out |= image[i];
  return out;
}

std::vector<AtomSet> BAEmbedding::apply_all(const std::vector<AtomSet>& xs) const {
  std::vector<std::size_t> source(target_atoms, AtomSet::npos);
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t b = image[i].next(); b != AtomSet::npos; b = image[i].next(b + 1)) source[b] = i;
  std::vector<AtomSet> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    require_width(x, image.size(), "embedding argument");
    AtomSet y(target_atoms);
    for (std::size_t b = 0; b < target_atoms; ++b)
      if (source[b] != AtomSet::npos && x.test(source[b])) y.set(b);
    out.push_back(std::move(y));
  }
  return out;
}

void BAEmbedding::validate() const {
  if (image.empty()) throw Error(ErrorCode::kInvalidEmbedding, "source has no atoms");
  AtomSet seen(target_atoms);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i].width() != target_atoms)
      throw Error(ErrorCode::kInvalidEmbedding, "image of atom " + std::to_string(i) + " has wrong width");
    if (image[i].none()) throw Error(ErrorCode::kInvalidEmbedding, "atom " + std::to_string(i) + " maps to 0");
    if (seen.intersects(image[i]))
      throw Error(ErrorCode::kInvalidEmbedding, "images of atoms overlap at atom " + std::to_string(i));
    seen |= image[i];
  }
  if (!seen.all()) throw Error(ErrorCode::kInvalidEmbedding, "images do not cover the target (not unital)");
}

BAEmbedding BAEmbedding::identity(std::size_t atoms) {
  BAEmbedding e{atoms, {}};
  for (std::size_t i = 0; i < atoms; ++i) e.image.push_back(AtomSet::single(atoms, i));
  return e;
}

BAEmbedding compose(const BAEmbedding& first, const BAEmbedding& second) {
  if (first.target_atoms != second.source_atoms())
    throw Error(ErrorCode::kInvalidEmbedding, "composition of incompatible embeddings");
  BAEmbedding out{second.target_atoms, {}};
  for (const auto& img : first.image) out.image.push_back(second.apply(img));
  return out;
}

// -------------------------------------------------------------- subalgebras

AtomSignatures::AtomSignatures(std::size_t atom_count, const std::vector<AtomSet>& elements)
    : words_(std::max<std::size_t>(1, (elements.size() + 63) / 64)), bits_(atom_count * words_, 0) {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t a = elements[i].next(); a != AtomSet::npos; a = elements[i].next(a + 1))
      bits_[a * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

std::vector<std::size_t> AtomSignatures::sorted() const {
  const std::size_t n = bits_.size() / words_;
  std::vector<std::size_t> order(n);
  if (words_ == 1) {
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
    for (std::size_t a = 0; a < n; ++a) keyed[a] = {bits_[a], a};
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < n; ++i) order[i] = keyed[i].second;
    return order;
  }
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return signature_less(of(a), of(b)); });
  return order;
}

bool signature_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool signature_equal(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

// Class of each atom under "same signature", classes numbered by their
// smallest atom.
std::vector<std::size_t> signature_classes(std::size_t atom_count, const std::vector<AtomSet>& gens,
                                           std::size_t& count) {
  const AtomSignatures sig(atom_count, gens);
  const auto order = sig.sorted();
  std::vector<std::size_t> rep(atom_count);
  for (std::size_t i = 0; i < order.size(); ++i)
    rep[order[i]] = i > 0 && signature_equal(sig.of(order[i - 1]), sig.of(order[i])) ? rep[order[i - 1]] : order[i];
  std::vector<std::size_t> number(atom_count, AtomSet::npos);
  std::vector<std::size_t> cls(atom_count);
  count = 0;
  for (std::size_t a = 0; a < atom_count; ++a) {
    if (number[rep[a]] == AtomSet::npos) number[rep[a]] = count++;
    cls[a] = number[rep[a]];
  }
  return cls;
}

}  // namespace

Subalgebra Subalgebra::generated_by(std::size_t atom_count, const std::vector<AtomSet>& generators) {
  for (const auto& g : generators) require_width(g, atom_count, "generator");
  Subalgebra s;
  s.atoms_ = atom_count;
  std::size_t count = 0;
  s.block_of_ = signature_classes(atom_count, generators, count);
  s.blocks_.assign(count, AtomSet(atom_count));
  for (std::size_t a = 0; a < atom_count; ++a) s.blocks_[s.block_of_[a]].set(a);
  return s;
}

std::size_t generated_atom_count(std::size_t atom_count, const std::vector<AtomSet>& generators) {
  for (const auto& g : generators) require_width(g, atom_count, "generator");
  std::size_t count = 0;
  signature_classes(atom_count, generators, count);
  return count;
}

bool Subalgebra::is_generated_by(const std::vector<AtomSet>& generators) const {
  for (const auto& g : generators) require_width(g, atoms_, "generator");
  std::size_t count = 0;
  const auto cls = signature_classes(atoms_, generators, count);
  if (count != blocks_.size()) return false;
  std::vector<std::size_t> to_block(count, AtomSet::npos);
  for (std::size_t a = 0; a < atoms_; ++a) {
    if (to_block[cls[a]] == AtomSet::npos) to_block[cls[a]] = block_of_[a];
    if (to_block[cls[a]] != block_of_[a]) return false;
  }
  return true;
}

Subalgebra Subalgebra::whole(std::size_t atom_count) {
  Subalgebra s;
  s.atoms_ = atom_count;
  for (std::size_t a = 0; a < atom_count; ++a) {
    s.blocks_.push_back(AtomSet::single(atom_count, a));
    s.block_of_.push_back(a);
  }
  return s;
}

Subalgebra Subalgebra::from_blocks(std::size_t atom_count, std::vector<AtomSet> blocks) {
  Subalgebra s;
  s.atoms_ = atom_count;
  s.block_of_.assign(atom_count, SIZE_MAX);
  std::sort(blocks.begin(), blocks.end(), [](const AtomSet& x, const AtomSet& y) { return x.next() < y.next(); });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    require_width(blocks[i], atom_count, "block");
    if (blocks[i].none()) throw Error(ErrorCode::kInvalidArgument, "empty block");
    for (std::size_t a : blocks[i].indices()) {
      if (s.block_of_[a] != SIZE_MAX) throw Error(ErrorCode::kInvalidArgument, "blocks overlap");
      s.block_of_[a] = i;
    }
  }
  if (std::find(s.block_of_.begin(), s.block_of_.end(), SIZE_MAX) != s.block_of_.end())
    throw Error(ErrorCode::kInvalidArgument, "blocks do not cover the atoms");
  s.blocks_ = std::move(blocks);
  return s;
}

Subalgebra intersect(const Subalgebra& a, const Subalgebra& b) {
  if (a.atom_count() != b.atom_count()) throw Error(ErrorCode::kInvalidArgument, "subalgebras of different algebras");
  const std::size_t n = a.atom_count();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto* s : {&a, &b})
    for (const auto& blk : s->blocks()) {
      const std::size_t first = blk.next();
      for (std::size_t i : blk.indices()) parent[find(i)] = find(first);
    }
  std::map<std::size_t, AtomSet> groups;
  for (std::size_t i = 0; i < n; ++i) groups.try_emplace(find(i), n).first->second.set(i);
  std::vector<AtomSet> blocks;
  for (auto& [root, blk] : groups) blocks.push_back(std::move(blk));
  return Subalgebra::from_blocks(n, std::move(blocks));
}

bool Subalgebra::contains(const AtomSet& x) const {
  if (x.width() != atoms_) return false;
  std::vector<bool> done(blocks_.size());
  for (std::size_t a = x.next(); a != AtomSet::npos; a = x.next(a + 1)) {
    const std::size_t b = block_of_[a];
    if (done[b]) continue;
    if (!blocks_[b].is_subset_of(x)) return false;
    done[b] = true;
  }
  return true;
}

AtomSet Subalgebra::to_local(const AtomSet& x) const {
  if (!contains(x)) throw Error(ErrorCode::kInvalidArgument, "element is not in the subalgebra");
  AtomSet out(blocks_.size());
  for (std::size_t a = x.next(); a != AtomSet::npos; a = x.next(a + 1)) out.set(block_of_[a]);
  return out;
}

AtomSet Subalgebra::from_local(const AtomSet& local) const { return inclusion().apply(local); }

BAEmbedding Subalgebra::inclusion() const { return BAEmbedding{atoms_, blocks_}; }

Subalgebra generated_with_ideal(std::size_t atom_count, std::vector<AtomSet> generators, const PrincipalIdeal& ideal) {
  require_width(ideal.generator, atom_count, "ideal generator");
  for (auto a : ideal.generator.indices()) generators.push_back(AtomSet::single(atom_count, a));
  return Subalgebra::generated_by(atom_count, generators);
}

// ---------------------------------------------------------------- quotients

AtomSet Quotient::project(const AtomSet& x) const {
  AtomSet out(kept_atoms.size());
  for (std::size_t i = 0; i < kept_atoms.size(); ++i)
    if (x.test(kept_atoms[i])) out.set(i);
  return out;
}

AtomSet Quotient::lift(const AtomSet& q, std::size_t parent_atoms) const {
  require_width(q, kept_atoms.size(), "quotient element");
  AtomSet out(parent_atoms);
  for (std::size_t i = q.next(); i != AtomSet::npos; i = q.next(i + 1)) out.set(kept_atoms[i]);
  return out;
}

Quotient quotient(const FiniteBooleanAlgebra& b, const PrincipalIdeal& ideal) {
  require_width(ideal.generator, b.atom_count(), "ideal generator");
  if (!ideal.proper()) throw Error(ErrorCode::kImproperIdeal, "the ideal contains 1");
  Quotient q;
  for (std::size_t a = 0; a < b.atom_count(); ++a)
    if (!ideal.generator.test(a)) q.kept_atoms.push_back(a);
  AtomSet designated(q.kept_atoms.size());
  for (std::size_t i = 0; i < q.kept_atoms.size(); ++i)
    if (b.designated().test(q.kept_atoms[i])) designated.set(i);
  q.algebra = FiniteBooleanAlgebra(q.kept_atoms.size(), designated);
  for (const auto& [label, x] : b.named()) q.algebra.name(label, q.project(x));
  return q;
}

// ------------------------------------------------------------- independence

std::optional<IndependenceViolation> find_independence_violation(std::size_t atom_count, const std::vector<AtomSet>& y_in,
                                                                 const std::vector<AtomSet>& x,
                                                                 const PrincipalIdeal& ideal) {
  require_width(ideal.generator, atom_count, "ideal generator");
  for (const auto& e : y_in) require_width(e, atom_count, "independent candidate");
  const auto y = dedupe(y_in);
  if (y.empty()) return std::nullopt;
  if (y.size() > 63) throw Error(ErrorCode::kEnumerationOverflow, "more than 63 candidates");
  const auto base = Subalgebra::generated_by(atom_count, x);
  const std::uint64_t patterns = std::uint64_t{1} << y.size();
  for (const auto& block : base.blocks()) {
    const AtomSet rest = block - ideal.generator;
    if (rest.none()) continue;  // every element above this block alone lies in I
    std::set<std::uint64_t> seen;
    for (std::size_t a = rest.next(); a != AtomSet::npos; a = rest.next(a + 1)) seen.insert(signature(y, a));
    if (seen.size() == patterns) continue;
    std::uint64_t missing = 0;
    while (seen.contains(missing)) ++missing;
    IndependenceViolation v{std::vector<bool>(y.size()), block};
    for (std::size_t i = 0; i < y.size(); ++i) v.signs[i] = (missing >> i) & 1u;
    return v;
  }
  return std::nullopt;
}

bool is_independent_mod_ideal(std::size_t atom_count, const std::vector<AtomSet>& y, const std::vector<AtomSet>& x,
                              const PrincipalIdeal& ideal) {
  return !find_independence_violation(atom_count, y, x, ideal);
}

// ----------------------------------------------------------------- pushouts

Pushout pushout(std::size_t a_atoms, std::size_t b_atoms, const BAEmbedding& c_to_a, const BAEmbedding& c_to_b) {
  if (c_to_a.target_atoms != a_atoms || c_to_b.target_atoms != b_atoms)
    throw Error(ErrorCode::kInvalidEmbedding, "embedding targets do not match the algebras");
  if (c_to_a.source_atoms() != c_to_b.source_atoms())
    throw Error(ErrorCode::kInvalidEmbedding, "embeddings start from different algebras");
  c_to_a.validate();
  c_to_b.validate();
  std::vector<std::size_t> under(a_atoms);
  for (std::size_t g = 0; g < c_to_a.source_atoms(); ++g)
    for (auto a : c_to_a.image[g].indices()) under[a] = g;
  Pushout p;
  for (std::size_t a = 0; a < a_atoms; ++a)
    for (auto b : c_to_b.image[under[a]].indices()) p.atom_pairs.emplace_back(a, b);
  const std::size_t n = p.atom_pairs.size();
  p.algebra = FiniteBooleanAlgebra(n);
  p.from_a = BAEmbedding{n, std::vector<AtomSet>(a_atoms, AtomSet(n))};
  p.from_b = BAEmbedding{n, std::vector<AtomSet>(b_atoms, AtomSet(n))};
  for (std::size_t i = 0; i < n; ++i) {
    p.from_a.image[p.atom_pairs[i].first].set(i);
    p.from_b.image[p.atom_pairs[i].second].set(i);
  }
  return p;
}

bool pushout_independence(const Pushout& d, const std::vector<AtomSet>& i2, const PrincipalIdeal& j) {
  const std::size_t n = d.algebra.atom_count();
  require_width(j.generator, n, "ideal generator");
  if (!j.proper()) throw Error(ErrorCode::kPreconditionFailed, "the ideal is improper, so B lies inside it");
  std::vector<AtomSet> images;
  for (const auto& e : i2) images.push_back(d.from_a.apply(e));
  for (const auto& block : Subalgebra::generated_by(n, images).blocks())
    if (block.is_subset_of(j.generator))
      throw Error(ErrorCode::kPreconditionFailed, "a nonzero element generated by I2 lies in the ideal");
  return is_independent_mod_ideal(n, images, d.from_b.image, j);
}

// ------------------------------------------------------------------- bases

std::vector<AtomSet> find_basis_containing(const FiniteBooleanAlgebra& f, std::size_t n, const AtomSet& b) {
  require_width(b, f.atom_count(), "element");
  if (n >= 63 || f.atom_count() != (std::size_t{1} << n))
    throw Error(ErrorCode::kNotFree, std::to_string(f.atom_count()) + " atoms is not 2^" + std::to_string(n));
  if (b.none() || b.all()) throw Error(ErrorCode::kTrivialElement, "0 and 1 belong to no basis");
  if (b.count() * 2 != f.atom_count())
    throw Error(ErrorCode::kNoBasisThrough, "element lies above " + std::to_string(b.count()) + " of " +
                                                std::to_string(f.atom_count()) + " atoms");
  // Relabel the atoms by codes in {0,1}^n with b exactly the atoms whose low bit is set.
  std::vector<std::size_t> code(f.atom_count());
  std::size_t in = 0, out = 0;
  for (std::size_t a = 0; a < f.atom_count(); ++a) code[a] = b.test(a) ? (1 | (in++ << 1)) : (out++ << 1);
  std::vector<AtomSet> basis(n, AtomSet(f.atom_count()));
  for (std::size_t a = 0; a < f.atom_count(); ++a)
    for (std::size_t j = 0; j < n; ++j)
      if ((code[a] >> j) & 1u) basis[j].set(a);
  return basis;
}

std::vector<AtomSet> rebase_with_element(const FiniteBooleanAlgebra& b2, const Subalgebra& b1, const PrincipalIdeal& i2,
                                         const std::vector<AtomSet>& j1_in, const AtomSet& b) {
  const std::size_t n = b2.atom_count();
  if (b1.atom_count() != n) throw Error(ErrorCode::kInvalidArgument, "base subalgebra lives in another algebra");
  require_width(b, n, "element");
  const auto j1 = dedupe(j1_in);
  if (!is_independent_mod_ideal(n, j1, b1.blocks(), i2))
    throw Error(ErrorCode::kPreconditionFailed, "J1 is not independent from B1 modulo I2");
  if (!is_independent_mod_ideal(n, {b}, b1.blocks(), i2))
    throw Error(ErrorCode::kPreconditionFailed, "b is not independent from B1 modulo I2");
  const auto span = generated_with_ideal(n, j1, i2);
  if (!span.contains(b)) throw Error(ErrorCode::kPreconditionFailed, "b is not generated by J1 and I2");
  if (std::find(j1.begin(), j1.end(), b) != j1.end()) return j1;

  // Blocks of <J1 ∪ I2> outside the ideal are the atoms of its image in B2/I2.
  std::vector<AtomSet> q_blocks;
  for (const auto& block : span.blocks())
    if (!block.is_subset_of(i2.generator)) q_blocks.push_back(block);
  const std::size_t k = j1.size();
  if (q_blocks.size() != (std::size_t{1} << k))
    throw Error(ErrorCode::kPreconditionFailed, "image of J1 in the quotient is not free");
  AtomSet local(q_blocks.size());
  for (std::size_t i = 0; i < q_blocks.size(); ++i)
    if (q_blocks[i].intersects(b)) local.set(i);
  std::vector<AtomSet> basis;
  try {
    basis = find_basis_containing(FiniteBooleanAlgebra(q_blocks.size()), k, local);
  } catch (const Error& e) {
    throw Error(ErrorCode::kPreconditionFailed, std::string("no basis of the quotient through b: ") + e.what());
  }
  std::vector<AtomSet> out{b};
  for (std::size_t j = 1; j < basis.size(); ++j) {
    AtomSet lifted(n);
    for (auto i : basis[j].indices()) lifted |= q_blocks[i] - i2.generator;
    out.push_back(lifted);
  }
  return out;
}

// -------------------------------------------------------------------- json

void to_json(nlohmann::json& j, const FiniteBooleanAlgebra& b) {
  j = {{"atoms", b.atom_count()}, {"designated", b.designated()}, {"named", b.named()}};
}

void from_json(const nlohmann::json& j, FiniteBooleanAlgebra& b) {
  try {
    FiniteBooleanAlgebra out(j.at("atoms").get<std::size_t>());
    if (j.contains("designated")) out.set_designated(j.at("designated").get<AtomSet>());
    if (j.contains("named"))
      for (const auto& [label, x] : j.at("named").items()) out.name(label, x.get<AtomSet>());
    b = std::move(out);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("algebra: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const BAEmbedding& e) { j = {{"target_atoms", e.target_atoms}, {"image", e.image}}; }

void from_json(const nlohmann::json& j, BAEmbedding& e) {
  try {
    e.target_atoms = j.at("target_atoms").get<std::size_t>();
    e.image = j.at("image").get<std::vector<AtomSet>>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, std::string("embedding: ") + ex.what());
  }
}

}  // namespace fraisse
