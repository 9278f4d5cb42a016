#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fraisse/boolean_algebra.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

inline constexpr int kDefaultTruncation = 8;

/// Truncated K1-style structure with an explicit P1. Designated atoms of the
/// algebra play the role of the true atoms; the remaining representation
/// atoms stand in for the atomless part. R is never stored: a is in R(b)
/// exactly when G1(a) ≤ b.
struct K1Structure {
  int trunc_n = kDefaultTruncation;
  std::vector<ElemId> p0;  // sorted
  std::vector<ElemId> p2;  // sorted
  FiniteBooleanAlgebra p1;
  std::map<ElemId, AtomSet> g1;
  std::map<ElemId, std::vector<AtomSet>> f;  // row per P2 element, F_0 .. F_{N-1}

  std::size_t atom_count() const { return p1.atom_count(); }
  AtomSet b_star() const { return p1.designated(); }
  /// {a in P0 : G1(a) ≤ b}.
  std::set<ElemId> trace(const AtomSet& b) const;
  /// Designated atoms, P2 rows and named elements, in that order.
  std::vector<AtomSet> generators() const;
  const AtomSet& value(ElemId c, int n) const { return f.at(c).at(static_cast<std::size_t>(n)); }
  /// Largest id in P0 ∪ P2 plus one (0 if empty).
  ElemId fresh_id() const;

  friend bool operator==(const K1Structure&, const K1Structure&) = default;
};

/// ⟨n⋆, B_{n⋆} ⊆ ... ⊆ B_N, b⋆⟩; chain[i] is B_{n⋆+i}.
struct K1Witness {
  int n_star = 0;
  std::vector<Subalgebra> chain;
  AtomSet b_star;
};

/// B_n generated by the designated atoms and F_m(c) for m < n.
K1Witness standard_witness(const K1Structure& m, int n_star);
/// First member of the standard witness, B_{n⋆}, without the rest of the chain.
Subalgebra standard_head(const K1Structure& m, int n_star);

/// P0 = P2 = ∅ and P1 the two-element algebra.
K1Structure minimal_model(int trunc_n = kDefaultTruncation);

/// Finite description of a member: P0, P2 and, for n < n⋆, the traces
/// R(F_n(c)) ⊆ P0. The free part is the free algebra on one coordinate per
/// (c, n) with n < N, plus one per named trace.
struct K1Presentation {
  int trunc_n = kDefaultTruncation;
  int n_star = 0;
  std::vector<ElemId> p0;
  std::vector<ElemId> p2;
  std::map<ElemId, std::vector<std::set<ElemId>>> trace;  // c -> n⋆ traces
  std::vector<std::set<ElemId>> named;                     // extra generators (K⁻¹ only)

  bool incident(ElemId a, ElemId c, int n) const;
  std::size_t coordinate_count() const { return p2.size() * static_cast<std::size_t>(trunc_n) + named.size(); }
  friend bool operator==(const K1Presentation&, const K1Presentation&) = default;
};

/// Throws InvalidArgument if the presentation is malformed (n⋆ ≥ N, bad
/// trace shapes, ids shared between P0 and P2).
void validate(const K1Presentation& p);

/// Explicit structure of a presentation. Throws EnumerationOverflow beyond
/// 2^16 free atoms.
K1Structure materialize(const K1Presentation& p);
K1Witness presentation_witness(const K1Presentation& p);

/// Free coordinate of (c, n) in materialize(p), and the atom index of a code.
std::size_t coordinate(const K1Presentation& p, ElemId c, int n);

/// Id maps plus the induced map on P1 atoms.
struct K1Embedding {
  std::map<ElemId, ElemId> p0;
  std::map<ElemId, ElemId> p2;
  BAEmbedding p1;

  AtomSet apply(const AtomSet& x) const { return p1.apply(x); }
  friend bool operator==(const K1Embedding&, const K1Embedding&) = default;
};

/// Derives the P1 map from the id maps by matching generator signatures
/// (named generators match by label). nullopt if the maps do not extend to an
/// embedding; `why` receives the reason.
std::optional<K1Embedding> derive_embedding(const K1Structure& src, const K1Structure& dst,
                                            const std::map<ElemId, ElemId>& p0, const std::map<ElemId, ElemId>& p2,
                                            std::string* why = nullptr);

/// Embedding that keeps every id.
std::optional<K1Embedding> inclusion_embedding(const K1Structure& src, const K1Structure& dst, std::string* why = nullptr);

K1Embedding compose(const K1Embedding& first, const K1Embedding& second);

/// Same ids, same atom count and the identity-id embedding exists.
bool same_up_to_atoms(const K1Structure& a, const K1Structure& b);

/// Incidence-preserving and -reflecting id maps between presentations with
/// equal N and n⋆.
bool is_presentation_embedding(const K1Presentation& a, const K1Presentation& b, const std::map<ElemId, ElemId>& p0,
                               const std::map<ElemId, ElemId>& p2);

/// Presentation as a relational structure: unary P0, P2 and binary
/// T0..T{n⋆-1}(a, c); the vocabulary records N as its index bound.
Vocabulary presentation_vocabulary(int n_star, int trunc_n);
FiniteStructure encode(const K1Presentation& p);
K1Presentation decode(const FiniteStructure& m, int n_star);

}  // namespace fraisse
