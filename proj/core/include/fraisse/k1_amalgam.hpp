#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_structure.hpp"
#include "fraisse/report.hpp"

namespace fraisse {

/// M1 ⊆ M2 with N2 placed over N1. New ids of N2 (P0 and P2 together, in N2's
/// order) are numbered from M1.fresh_id().
struct FreeAmalgamResult {
  K1Structure m2;
  int n_star = 0;
  K1Embedding m1_to_m2;
  K1Embedding n2_to_m2;
  std::map<ElemId, ElemId> n2_ids;
  FreeExtensionWitness witness;  // M1 ⊆ M2
  std::vector<std::size_t> fresh_atoms;  // designated atoms of M2 not coming from M1
  /// "amalgam.kminus1", "amalgam.k1", "amalgam.m1_embeds", "amalgam.n2_embeds",
  /// "amalgam.over_n1", "amalgam.disjoint", "amalgam.designated", then the
  /// free-extension clauses.
  Report report;
};

/// Smallest n⋆ for which the standard witness passes, if any.
std::optional<int> least_n_star(const K1Structure& m);

/// N1 ⊆ M1 and N1 ⊆ N2 by ids. `n_star` overrides the aligned index (the
/// largest of the three least ones). Throws WitnessAlignmentFailed,
/// UltrafilterChoiceFailed, CollapseDetected, InvalidEmbedding.
FreeAmalgamResult amalgamate_free(const K1Structure& m1, const K1Structure& n1, const K1Structure& n2,
                                  std::optional<int> n_star = std::nullopt);

struct DisjointAmalgamResult {
  K1Structure m3;
  K1Embedding m1_to_m3;
  K1Embedding m2_to_m3;
  std::map<ElemId, ElemId> m2_ids;
  K1Witness witness;  // B3_n generated by the images of B1_n and B2_n
  Report report;
};

/// M0 ⊆ M1 and M0 ⊆ M2 by ids.
DisjointAmalgamResult disjoint_amalgamate_k1(const K1Structure& m0, const K1Structure& m1, const K1Structure& m2);

/// Traces of the heads below n⋆; named generators are dropped.
K1Presentation to_presentation(const K1Structure& m, int n_star);

/// Free amalgam of presentations: nothing new is incident across the two sides.
K1Presentation presentation_amalgam(const K1Presentation& m1, const K1Presentation& n1, const K1Presentation& n2);

/// Every way of filling in the incidences between M1 − N1 and the new part of
/// N2 whose materialization is a K1 member extending both. Throws
/// EnumerationOverflow beyond `max_bits` unknown incidences or `max_atoms`
/// atoms per candidate.
std::vector<K1Presentation> completion_oracle(const K1Presentation& m1, const K1Presentation& n1,
                                              const K1Presentation& n2, std::size_t max_bits = 16,
                                              std::size_t max_atoms = 64);

}  // namespace fraisse
