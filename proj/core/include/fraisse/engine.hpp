#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Result of a disjoint amalgamation. The left structure sits inside `d`
/// with its own ids; `right_to_d` places the right structure.
struct Amalgam {
  FiniteStructure d;
  Embedding right_to_d;
};

/// A class of finite structures closed under isomorphism, with substructure
/// as the strong-substructure relation unless a subclass says otherwise.
class AmalgamationClass {
 public:
  virtual ~AmalgamationClass() = default;

  virtual std::string name() const = 0;
  virtual const Vocabulary& vocabulary() const = 0;
  virtual bool contains(const FiniteStructure& m) const = 0;

  /// One representative per isomorphism type with at most `bound` elements,
  /// ordered by size and then by serialized form. The default enumerates all
  /// relational structures on {0..n-1}; it throws EnumerationOverflow when a
  /// size needs more than 24 tuple bits or the vocabulary has functions.
  virtual std::vector<FiniteStructure> members(std::size_t bound) const;

  /// Disjoint amalgam of left and right over base. The default searches the
  /// members up to |left| + |right| - |base| elements.
  virtual std::optional<Amalgam> amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                            const FiniteStructure& right, const Embedding& base_to_left,
                                            const Embedding& base_to_right) const;

  /// Subsets that carry a strong substructure. Default: closed subsets.
  virtual bool is_strong_subset(const FiniteStructure& m, const std::set<ElemId>& s) const;
};

/// Sorts by size and then by serialized form, the order members() promises.
void sort_by_size_and_form(std::vector<FiniteStructure>& ms);

/// Free amalgam for classes without functions: right's new elements get
/// fresh ids and relations are transported, nothing is identified.
Amalgam free_amalgam(const FiniteStructure& left, const FiniteStructure& right, const Embedding& base_to_left,
                     const Embedding& base_to_right);

struct PropertyReport {
  bool holds = true;
  std::size_t cases = 0;
  nlohmann::json counterexample;  // null when holds
  nlohmann::json witness;         // first successful instance, or null
};

PropertyReport check_jep(const AmalgamationClass& k, std::size_t bound);
PropertyReport check_disjoint_ap(const AmalgamationClass& k, std::size_t bound);

/// A ≤ B with A a strong proper substructure of B (A's ids are B's ids).
struct ExtensionPair {
  FiniteStructure a;
  FiniteStructure b;
};

/// All pairs with |B| ≤ bound, B ranging over the class members. Pairs that
/// differ by an automorphism of B are listed once.
std::vector<ExtensionPair> extension_pairs(const AmalgamationClass& k, std::size_t bound);

enum class TaskStatus { kPending, kRealized };

struct Task {
  std::size_t chain_index = 0;
  std::size_t pair = 0;
  Embedding f;  // A -> chain[chain_index]
  TaskStatus status = TaskStatus::kPending;
  std::optional<Embedding> g;  // B -> chain[realized_at], extending f
  std::size_t realized_at = 0;
};

struct GenericApproximation {
  std::size_t bound = 0;
  std::vector<FiniteStructure> chain;
  std::vector<ExtensionPair> pairs;
  std::vector<Task> tasks;
  /// Chain members whose tasks have been written to the ledger.
  std::size_t generated_through = 0;

  const FiniteStructure& last() const { return chain.back(); }
  /// Largest i such that every task of chain members 0..i is realized, or
  /// nullopt if even M0 still has pending work.
  std::optional<std::size_t> saturated_core() const;
  std::size_t pending_count() const;
};

struct GenericOptions {
  std::size_t bound = 3;
};

/// Fair FIFO construction. Each step takes the oldest pending task and either
/// finds it already realized or amalgamates B into the last member over f.
/// Tasks of a chain member are generated when the queue reaches it.
GenericApproximation build_generic(const AmalgamationClass& k, std::size_t steps, const FiniteStructure& seed,
                                   const GenericOptions& options = {});

/// Rechecks a ledger: chain coherence, every realized g extends its f, every
/// f is an embedding. Throws InvalidEmbedding naming the first bad entry.
void verify_ledger(const GenericApproximation& g);

struct Defect {
  std::size_t pair = 0;
  Embedding f;
};

/// Tasks (A ≤ B, f: A -> M) with |B| ≤ bound lacking an extension to B. When
/// `core` is given only embeddings into the core are considered.
std::vector<Defect> richness_defect(const FiniteStructure& m, const AmalgamationClass& k, std::size_t bound,
                                    const std::optional<std::set<ElemId>>& core = std::nullopt);

/// Per-round move sets for the game. Round j (1-based) uses levels[j-1], and
/// the last level repeats. An empty arena means whole universes.
struct Arena {
  std::vector<std::set<ElemId>> levels;

  static Arena whole() { return {}; }
};

/// Saturation levels of a construction, as used for stratified games: level
/// j collects the chain member by which every task of level j-1 over at most
/// j-1 points is realized. nullopt if such a task is still pending.
std::optional<Arena> saturation_arena(const GenericApproximation& g, std::size_t depth);

/// Duplicator survives the depth-round game where positions are compared by
/// the labelled substructures they generate.
bool back_and_forth_check(const FiniteStructure& m, const FiniteStructure& n, std::size_t depth,
                          const Arena& arena_m = {}, const Arena& arena_n = {});

enum class Separability { kCertified, kUnknown };

struct SeparabilityResult {
  Separability verdict = Separability::kUnknown;
  nlohmann::json formula;         // list of literals over positions of the tuple
  nlohmann::json counterexample;  // member and tuple that satisfy the formula without being a copy
  std::size_t tuples_checked = 0;
};

/// The atomic diagram of `tuple` (which must list A's universe) and whether it
/// isolates the isomorphism type among members of size |A|. Symbols whose
/// name ends in an integer ≥ `formula_index_bound` are left out of the
/// formula. Throws NotMember if A is not in the class.
SeparabilityResult separability_witness(const AmalgamationClass& k, const FiniteStructure& a,
                                        const std::vector<ElemId>& tuple, std::size_t size_bound,
                                        std::optional<int> formula_index_bound = std::nullopt);

bool satisfies(const FiniteStructure& m, const std::vector<ElemId>& tuple, const nlohmann::json& formula);

void to_json(nlohmann::json& j, const GenericApproximation& g);

}  // namespace fraisse
