#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fraisse/k1_structure.hpp"
#include "fraisse/report.hpp"

namespace fraisse {

/// Clause ids "kminus1.1" .. "kminus1.9":
///  1 ids unique, P0 and P2 disjoint
///  2 G1 values have the algebra's width
///  3 every G1(a) is a single atom
///  4 every designated atom is some G1(a) (distinct P4 elements get distinct traces)
///  5 G1(a) is designated and R(G1(a)) = {a}
///  6 each P2 element has a row of exactly N values
///  7 rows only for P2 ids, with the algebra's width
///  8 no designated atom lies under F_{N-1}(c)
///  9 P1 is generated by the designated atoms, the rows and the named elements
Report check_Kminus1(const K1Structure& m);

/// Clause ids "k1.1" .. "k1.7":
///  1 b⋆ is the join of the designated atoms
///  2 the chain has N - n⋆ + 1 members and increases
///  3 B_{n⋆} contains P4, is generated by P4 and the heads, and is free over P4
///  4 B_N is all of P1
///  5 each row is without repeats and independent over {0}
///  6 tails are distinct, disjoint from b⋆ and independent from B_{n⋆} modulo b⋆
///  7 each later B_n adds exactly the tails below n
Report check_K1(const K1Structure& m, const K1Witness& w);

/// (I, H) certifying that M2 is free over the image of M1.
struct FreeExtensionWitness {
  std::vector<AtomSet> i;
  std::map<ElemId, int> h;  // on P2 elements of M2 outside the image
};

/// Clause ids "free.generates", "free.independent", "free.avoids",
/// "free.tails", "free.h_domain".
Report check_free_extension(const K1Structure& m1, const K1Structure& m2, const K1Embedding& e,
                            const FreeExtensionWitness& w);

/// Witness for a substructure: a basis of B_{n⋆} of M1 over the image of
/// M0's, plus the tails of the new P2 elements, with H = n⋆. Throws
/// WitnessAlignmentFailed when the heads do not split M0's blocks evenly.
FreeExtensionWitness extract_free_witness(const K1Structure& m0, const K1Structure& m1, const K1Embedding& e,
                                          int n_star);

/// Witness over the minimal model.
FreeExtensionWitness free_over_minimal(const K1Structure& m, int n_star);
K1Embedding embedding_from_minimal(const K1Structure& m);

/// (e23(I12) ∪ I23, H12 ∪ H23). Throws OverlappingH if the H domains meet.
FreeExtensionWitness compose_free_witnesses(const FreeExtensionWitness& w12, const FreeExtensionWitness& w23,
                                            const K1Embedding& e23);

struct ChainLink {
  K1Embedding e;  // chain[k] -> chain[k+1]
  FreeExtensionWitness w;
};

struct ChainUnion {
  K1Structure top;
  std::vector<K1Embedding> into_top;            // chain[k] -> top
  std::vector<FreeExtensionWitness> witnesses;  // chain[k] ⊆ top
};

/// The union of a finite chain is its last member; each earlier member gets
/// the composite of the later witnesses.
ChainUnion union_of_chain(const std::vector<K1Structure>& chain, const std::vector<ChainLink>& links);

/// Free-extension bookkeeping on presentations: I lists free coordinates
/// (c, n) of the larger presentation.
struct PresentationFreeWitness {
  std::set<std::pair<ElemId, int>> i;
  std::map<ElemId, int> h;
};

PresentationFreeWitness presentation_free_witness(const K1Presentation& small, const K1Presentation& big,
                                                  const std::map<ElemId, ElemId>& p2);
Report check_presentation_free_extension(const K1Presentation& small, const K1Presentation& big,
                                         const std::map<ElemId, ElemId>& p0, const std::map<ElemId, ElemId>& p2,
                                         const PresentationFreeWitness& w);
PresentationFreeWitness compose_presentation_witnesses(const PresentationFreeWitness& w12,
                                                       const PresentationFreeWitness& w23,
                                                       const std::map<ElemId, ElemId>& p2_23);
/// The explicit witness a presentation witness stands for, in materialize(big).
FreeExtensionWitness explicit_witness(const K1Presentation& big, const PresentationFreeWitness& w);

struct NonoiseOptions {
  std::size_t floor = 1;
  std::optional<std::set<ElemId>> core_p2;  // heads considered; all P2 if unset
};

/// "nonoise.i": distinct heads have distinct traces; "nonoise.ii": every
/// nonzero element is above an atom of the representation; "nonoise.iii":
/// head traces and co-traces reach the floor.
Report nonoise_check(const K1Presentation& p, const NonoiseOptions& options = {});
Report nonoise_check(const K1Structure& m, int n_star, const NonoiseOptions& options = {});

}  // namespace fraisse
