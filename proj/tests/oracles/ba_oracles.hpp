#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "fraisse/atom_set.hpp"
#include "fraisse/boolean_algebra.hpp"

// Brute-force references for the Boolean algebra layer. Everything here works
// on explicit element sets and never calls the fast paths it is checking.
namespace oracle {

using fraisse::AtomSet;

/// Every element of the power set of w atoms.
std::vector<AtomSet> all_elements(std::size_t w);

/// Elements of the subalgebra generated by gens, by closing {0, 1, gens}
/// under meet and complement until nothing changes.
std::set<AtomSet> generated_elements(std::size_t w, const std::vector<AtomSet>& gens);

/// Minimal nonzero elements of a family closed under the operations.
std::vector<AtomSet> minimal_elements(const std::set<AtomSet>& algebra);

/// Y independent from <X> modulo the ideal below `ideal`: for every nonzero
/// polynomial in |Y| variables, written as a nonempty set of sign patterns,
/// and every d in <X> outside the ideal, σ(Y) ∧ d leaves the ideal.
bool dnf_independent(std::size_t w, const std::set<AtomSet>& y, const std::vector<AtomSet>& x, const AtomSet& ideal);

/// Same notion through minterms of Y against atoms of <X>, the atoms found by
/// grouping the atoms of P(w) by their membership in X. Usable when Y is too
/// large to list every polynomial.
bool minterm_independent(std::size_t w, const std::set<AtomSet>& y, const std::vector<AtomSet>& x, const AtomSet& ideal);

/// Atoms of <gens ∪ {single atoms below ideal}> by membership signature.
std::set<AtomSet> signature_atoms(std::size_t w, const std::vector<AtomSet>& gens, const AtomSet& ideal);

/// All maps {0..from-1} -> {0..to-1}, as vectors.
std::vector<std::vector<std::size_t>> all_maps(std::size_t from, std::size_t to);
std::vector<std::vector<std::size_t>> surjections(std::size_t from, std::size_t to);

/// The homomorphism P(source) -> P(target) sending x to the target atoms whose
/// phi-value lies in x.
AtomSet pull_back(const std::vector<std::size_t>& phi, const AtomSet& x);

/// Embedding P(source) -> P(target) given by a surjection from target atoms.
fraisse::BAEmbedding embedding_of(std::size_t source_atoms, const std::vector<std::size_t>& phi);

/// n elements of P(2^n atoms) whose 2^n minterms are all nonzero.
bool is_free_basis(std::size_t n, const std::vector<AtomSet>& basis);

/// Some free basis of P(2^n atoms) contains b, searched over all subsets.
bool some_basis_contains(std::size_t n, const AtomSet& b);

}  // namespace oracle
