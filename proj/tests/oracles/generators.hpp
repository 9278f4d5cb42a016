#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <vector>

#include "fraisse/atom_set.hpp"

// Seeded instance generators shared by the unit and acceptance suites.
namespace oracle {

using fraisse::AtomSet;

struct IndependenceInstance {
  std::size_t w = 1;
  std::set<AtomSet> y;
  std::vector<AtomSet> x;
  AtomSet ideal;
};

/// At most 16 atoms and three candidates. Half the draws are planted free
/// products, some of them then damaged by dropping an atom.
IndependenceInstance independence_instance(std::mt19937_64& rng);

/// B0 ⊆ B1 ⊆ P(w) given by generators, I2 below `ideal`, J0 ⊆ B1, J1 ⊆ P(w).
/// The hypotheses of the chained-algebra lemma may or may not hold.
struct ChainInstance {
  std::size_t w = 1;
  std::vector<AtomSet> b0;
  std::vector<AtomSet> b1;
  AtomSet ideal;
  std::vector<AtomSet> j0;
  std::vector<AtomSet> j1;
};
ChainInstance chain_instance(std::mt19937_64& rng);

/// J1 free over B1 modulo I2 and b a half-measure element of <J1 ∪ I2>.
struct RebaseInstance {
  std::size_t w = 1;
  std::vector<AtomSet> b1;
  AtomSet ideal;
  std::vector<AtomSet> j1;
  AtomSet b;
};
RebaseInstance rebase_instance(std::mt19937_64& rng);

}  // namespace oracle
