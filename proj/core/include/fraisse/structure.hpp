#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fraisse {

using ElemId = std::uint32_t;
using Tuple = std::vector<ElemId>;

struct RelationSymbol {
  std::string name;
  int arity = 0;
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

struct FunctionSymbol {
  std::string name;
  int arity = 0;
  bool partial = false;
  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

/// Relation, function and constant symbols. Indexed families (R_n, f_n, ...)
/// are declared by name with `index_bound` recording the truncation N.
class Vocabulary {
 public:
  Vocabulary() = default;

  Vocabulary& add_relation(std::string name, int arity);
  Vocabulary& add_function(std::string name, int arity, bool partial = false);
  Vocabulary& add_constant(std::string name);
  Vocabulary& set_index_bound(int n);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }
  std::optional<int> index_bound() const { return index_bound_; }

  std::optional<std::size_t> relation_index(const std::string& name) const;
  std::optional<std::size_t> function_index(const std::string& name) const;
  std::optional<std::size_t> constant_index(const std::string& name) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  void require_fresh(const std::string& name) const;

  std::vector<RelationSymbol> relations_;
  std::vector<FunctionSymbol> functions_;
  std::vector<std::string> constants_;
  std::optional<int> index_bound_;
};

/// A finite structure. The universe is kept sorted so that every enumeration
/// over it is deterministic.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  explicit FiniteStructure(Vocabulary vocab);

  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<ElemId>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  bool contains(ElemId e) const;

  void add_element(ElemId e);
  /// Largest id plus one (0 when empty).
  ElemId fresh_id() const;

  void add_tuple(std::size_t relation, Tuple t);
  void add_tuple(const std::string& relation, Tuple t);
  bool holds(std::size_t relation, const Tuple& t) const;
  const std::set<Tuple>& tuples(std::size_t relation) const { return relations_.at(relation); }

  void set_value(std::size_t function, Tuple args, ElemId value);
  void set_value(const std::string& function, Tuple args, ElemId value);
  std::optional<ElemId> value(std::size_t function, const Tuple& args) const;
  const std::map<Tuple, ElemId>& graph(std::size_t function) const { return functions_.at(function); }

  void set_constant(std::size_t constant, ElemId e);
  void set_constant(const std::string& constant, ElemId e);
  std::optional<ElemId> constant(std::size_t c) const { return constants_.at(c); }

  /// Throws InvalidArgument naming the first violated invariant: tuples drawn
  /// from the universe, total functions defined everywhere, constants assigned.
  void validate() const;

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

 private:
  Vocabulary vocab_;
  std::vector<ElemId> universe_;
  std::vector<std::set<Tuple>> relations_;
  std::vector<std::map<Tuple, ElemId>> functions_;
  std::vector<std::optional<ElemId>> constants_;
};

/// Element map from `source` universe (by position) into target ids.
struct Embedding {
  std::vector<ElemId> source_universe;
  std::vector<ElemId> image;

  ElemId operator()(ElemId e) const;
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct ClosureOptions {
  std::size_t element_cap = 512;
};

/// Least substructure of `m` containing `generators`: closure under all
/// defined function values and constants, with induced relations.
FiniteStructure generate_substructure(const FiniteStructure& m, const std::set<ElemId>& generators,
                                      const ClosureOptions& options = {});

/// Just the closed element set.
std::set<ElemId> closure(const FiniteStructure& m, const std::set<ElemId>& generators,
                         const ClosureOptions& options = {});

/// Induced substructure on a set that is already closed.
FiniteStructure restrict_to(const FiniteStructure& m, const std::set<ElemId>& elements);

/// Checks injectivity, relation preservation and reflection, and agreement
/// with functions (including definedness of partial functions) and constants.
bool is_embedding(const FiniteStructure& a, const FiniteStructure& b, const Embedding& e);

/// All embeddings a -> b in lexicographic order of the image vectors.
std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a, const FiniteStructure& b,
                                            std::size_t limit = SIZE_MAX);

/// Embeddings extending a partial assignment (source id -> target id).
std::vector<Embedding> enumerate_embeddings_extending(const FiniteStructure& a, const FiniteStructure& b,
                                                      const std::map<ElemId, ElemId>& fixed,
                                                      std::size_t limit = SIZE_MAX);

bool is_isomorphic(const FiniteStructure& a, const FiniteStructure& b);

Embedding compose(const Embedding& first, const Embedding& second);

/// Canonical relabelling to 0..n-1 minimising the serialized diagram over all
/// permutations. Exponential; intended for structures of at most ~7 elements.
FiniteStructure canonical_form(const FiniteStructure& m);

/// Relabel by an explicit map (ids not in the map are kept).
FiniteStructure relabel(const FiniteStructure& m, const std::map<ElemId, ElemId>& ids);

}  // namespace fraisse
