#pragma once

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "fraisse/k1_structure.hpp"

namespace fraisse {

struct CorpusOptions {
  int trunc_n = 6;
  std::size_t max_p0 = 3;
  std::size_t max_p2 = 2;
  int max_n_star = 2;
};

/// One presentation per isomorphism type and n⋆, P0 ids before P2 ids.
std::vector<K1Presentation> k1_corpus(const CorpusOptions& options = {});

/// Induced sub-presentation on the kept ids.
K1Presentation restrict_presentation(const K1Presentation& p, const std::set<ElemId>& keep);

/// Every induced sub-presentation, from the empty one up to p itself.
std::vector<K1Presentation> sub_presentations(const K1Presentation& p);

/// A structure that should fail exactly one check_Kminus1 clause (1..9);
/// nullopt when the base lacks what the clause needs.
std::optional<K1Structure> kminus1_mutant(const K1Structure& base, int clause, std::mt19937_64& rng);

struct K1Mutant {
  K1Structure m;
  K1Witness w;
};

/// A structure and witness that should fail exactly one check_K1 clause
/// (1..7). The base must be a materialized presentation with this n⋆.
std::optional<K1Mutant> k1_mutant(const K1Structure& base, int n_star, int clause, std::mt19937_64& rng);

}  // namespace fraisse
