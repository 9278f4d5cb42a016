#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraisse/atom_set.hpp"

namespace fraisse {

/// Finite Boolean algebra in atom-canonical form: the power set of
/// `atom_count` atoms. Elements are AtomSets of that width.
class FiniteBooleanAlgebra {
 public:
  FiniteBooleanAlgebra() = default;
  explicit FiniteBooleanAlgebra(std::size_t atom_count);
  FiniteBooleanAlgebra(std::size_t atom_count, AtomSet designated);

  std::size_t atom_count() const noexcept { return atoms_; }
  AtomSet zero() const { return AtomSet(atoms_); }
  AtomSet one() const { return AtomSet::full(atoms_); }
  AtomSet atom(std::size_t i) const { return AtomSet::single(atoms_, i); }
  bool is_element(const AtomSet& x) const noexcept { return x.width() == atoms_; }

  const AtomSet& designated() const noexcept { return designated_; }
  void set_designated(AtomSet d);

  const std::map<std::string, AtomSet>& named() const noexcept { return named_; }
  void name(const std::string& label, AtomSet x);

  friend bool operator==(const FiniteBooleanAlgebra&, const FiniteBooleanAlgebra&) = default;

 private:
  std::size_t atoms_ = 1;
  AtomSet designated_{1};
  std::map<std::string, AtomSet> named_;
};

/// Unital embedding given by the target atoms lying under each source atom.
struct BAEmbedding {
  std::size_t target_atoms = 0;
  std::vector<AtomSet> image;  // indexed by source atom

  std::size_t source_atoms() const noexcept { return image.size(); }
  AtomSet apply(const AtomSet& x) const;
  /// Same as apply on each element; faster for many elements of a large source.
  std::vector<AtomSet> apply_all(const std::vector<AtomSet>& xs) const;
  /// Throws InvalidEmbedding unless the images are nonempty and partition the
  /// target atoms.
  void validate() const;

  static BAEmbedding identity(std::size_t atoms);
  friend bool operator==(const BAEmbedding&, const BAEmbedding&) = default;
};

BAEmbedding compose(const BAEmbedding& first, const BAEmbedding& second);

/// {x : x <= generator}. Every ideal of a finite algebra has this form.
struct PrincipalIdeal {
  AtomSet generator;

  bool contains(const AtomSet& x) const { return x.is_subset_of(generator); }
  bool proper() const { return !generator.all(); }
  static PrincipalIdeal zero(std::size_t atoms) { return {AtomSet(atoms)}; }
};

/// Subalgebra of the power set of `atom_count` atoms, stored as the partition
/// of the atoms into the subalgebra's own atoms ("blocks"), ordered by their
/// lowest atom.
class Subalgebra {
 public:
  Subalgebra() = default;
  static Subalgebra generated_by(std::size_t atom_count, const std::vector<AtomSet>& generators);
  static Subalgebra whole(std::size_t atom_count);
  /// From a partition of the atoms; blocks are reordered by lowest atom.
  static Subalgebra from_blocks(std::size_t atom_count, std::vector<AtomSet> blocks);

  std::size_t atom_count() const noexcept { return atoms_; }
  const std::vector<AtomSet>& blocks() const noexcept { return blocks_; }
  std::size_t size_log2() const noexcept { return blocks_.size(); }
  bool contains(const AtomSet& x) const;
  /// Same partition as generated_by(atom_count(), generators), without building it.
  bool is_generated_by(const std::vector<AtomSet>& generators) const;
  /// Index of the block containing atom i.
  std::size_t block_of(std::size_t atom) const { return block_of_.at(atom); }

  /// The element as a set of blocks; throws InvalidArgument if not a member.
  AtomSet to_local(const AtomSet& x) const;
  AtomSet from_local(const AtomSet& local) const;
  /// Inclusion of the block algebra into the parent.
  BAEmbedding inclusion() const;

  friend bool operator==(const Subalgebra& a, const Subalgebra& b) {
    return a.atoms_ == b.atoms_ && a.blocks_ == b.blocks_;
  }

 private:
  std::size_t atoms_ = 0;
  std::vector<AtomSet> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Number of atoms of the subalgebra the generators span.
std::size_t generated_atom_count(std::size_t atom_count, const std::vector<AtomSet>& generators);


/// Which of `elements` each atom lies under, packed 64 elements to a word.
class AtomSignatures {
 public:
  AtomSignatures(std::size_t atom_count, const std::vector<AtomSet>& elements);

  std::span<const std::uint64_t> of(std::size_t atom) const { return {bits_.data() + atom * words_, words_}; }
  /// Atoms sorted by signature, ties by index.
  std::vector<std::size_t> sorted() const;

 private:
  std::size_t words_ = 1;
  std::vector<std::uint64_t> bits_;
};

bool signature_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
bool signature_equal(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Largest subalgebra contained in both (finest common coarsening).
Subalgebra intersect(const Subalgebra& a, const Subalgebra& b);

/// Generated subalgebra containing the ideal as well: <X ∪ I>.
Subalgebra generated_with_ideal(std::size_t atom_count, std::vector<AtomSet> generators, const PrincipalIdeal& ideal);

struct Quotient {
  FiniteBooleanAlgebra algebra;
  std::vector<std::size_t> kept_atoms;  // parent atom for each quotient atom

  /// pi(x) = x ∧ ¬generator, re-indexed to the quotient's atoms.
  AtomSet project(const AtomSet& x) const;
  /// The preimage of q lying below ¬generator.
  AtomSet lift(const AtomSet& q, std::size_t parent_atoms) const;
};

/// Throws ImproperIdeal when the generator is 1.
Quotient quotient(const FiniteBooleanAlgebra& b, const PrincipalIdeal& ideal);

/// Y independent from X modulo I: every minterm over Y meets every a in <X>−I
/// outside I. Vacuously true for empty Y.
bool is_independent_mod_ideal(std::size_t atom_count, const std::vector<AtomSet>& y, const std::vector<AtomSet>& x,
                              const PrincipalIdeal& ideal);
inline bool is_independent_mod_ideal(const FiniteBooleanAlgebra& b, const std::vector<AtomSet>& y,
                                     const std::vector<AtomSet>& x, const PrincipalIdeal& ideal) {
  return is_independent_mod_ideal(b.atom_count(), y, x, ideal);
}

/// First (sign pattern, base block) pair violating independence, for reports.
struct IndependenceViolation {
  std::vector<bool> signs;
  AtomSet base_block;
};
std::optional<IndependenceViolation> find_independence_violation(std::size_t atom_count, const std::vector<AtomSet>& y,
                                                                 const std::vector<AtomSet>& x,
                                                                 const PrincipalIdeal& ideal);

struct Pushout {
  FiniteBooleanAlgebra algebra;
  BAEmbedding from_a;
  BAEmbedding from_b;
  std::vector<std::pair<std::size_t, std::size_t>> atom_pairs;  // (A atom, B atom) per D atom
};

/// Coproduct of A and B amalgamated over C. Atoms of the result are the pairs
/// (α, β) lying under the image of one C atom, in lexicographic order.
Pushout pushout(std::size_t a_atoms, std::size_t b_atoms, const BAEmbedding& c_to_a, const BAEmbedding& c_to_b);

/// n-element free basis of the power set of 2^n atoms containing b. Exists iff
/// b lies above exactly half the atoms; b is returned first.
std::vector<AtomSet> find_basis_containing(const FiniteBooleanAlgebra& f, std::size_t n, const AtomSet& b);

/// Replaces J1 by a set containing b that is still independent from B1
/// modulo I2 and generates the same subalgebra together with I2.
std::vector<AtomSet> rebase_with_element(const FiniteBooleanAlgebra& b2, const Subalgebra& b1,
                                         const PrincipalIdeal& i2, const std::vector<AtomSet>& j1, const AtomSet& b);

/// Is the image of I2 (elements of A) independent from the image of B modulo J
/// in the pushout? Throws PreconditionFailed unless no nonzero element of
/// <iA(I2)> lies in J and J is proper.
bool pushout_independence(const Pushout& d, const std::vector<AtomSet>& i2, const PrincipalIdeal& j);

void to_json(nlohmann::json& j, const FiniteBooleanAlgebra& b);
void from_json(const nlohmann::json& j, FiniteBooleanAlgebra& b);
void to_json(nlohmann::json& j, const BAEmbedding& e);
void from_json(const nlohmann::json& j, BAEmbedding& e);

}  // namespace fraisse
