#pragma once

#include <string>
#include <vector>

#include "fraisse/engine.hpp"

namespace fraisse {

/// Finite strict linear orders in the relation "lt".
class LinearOrderClass : public AmalgamationClass {
 public:
  LinearOrderClass();
  std::string name() const override { return "linear_orders"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  bool contains(const FiniteStructure& m) const override;
  std::vector<FiniteStructure> members(std::size_t bound) const override;
  /// New right elements go just below the image of the next base element.
  std::optional<Amalgam> amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                    const FiniteStructure& right, const Embedding& base_to_left,
                                    const Embedding& base_to_right) const override;

  static FiniteStructure chain(std::size_t n);

 private:
  Vocabulary vocab_;
};

/// Finite simple graphs: "E" symmetric and irreflexive. Free amalgamation.
class GraphClass : public AmalgamationClass {
 public:
  GraphClass();
  std::string name() const override { return "graphs"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  bool contains(const FiniteStructure& m) const override;
  std::optional<Amalgam> amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                    const FiniteStructure& right, const Embedding& base_to_left,
                                    const Embedding& base_to_right) const override;

 private:
  Vocabulary vocab_;
};

/// Finite fields of characteristic two with "add", "mul", "zero", "one".
/// Substructures are subfields, so disjoint amalgamation fails as soon as
/// two copies of GF(4) meet over GF(2).
class CharTwoFieldClass : public AmalgamationClass {
 public:
  CharTwoFieldClass();
  std::string name() const override { return "char2_fields"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  bool contains(const FiniteStructure& m) const override;
  /// GF(2), GF(4), GF(8), GF(16) as far as the bound allows.
  std::vector<FiniteStructure> members(std::size_t bound) const override;

  FiniteStructure field(unsigned degree) const;

 private:
  Vocabulary vocab_;
};

/// A class given by an explicit list of structures, closed under isomorphism.
class ExplicitListClass : public AmalgamationClass {
 public:
  ExplicitListClass(std::string name, Vocabulary vocab, std::vector<FiniteStructure> list);
  std::string name() const override { return name_; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  bool contains(const FiniteStructure& m) const override;
  std::vector<FiniteStructure> members(std::size_t bound) const override;

  /// Two one-point structures naming the constant with incompatible
  /// predicates; no member embeds both.
  static ExplicitListClass jep_counterexample();

 private:
  std::string name_;
  Vocabulary vocab_;
  std::vector<FiniteStructure> list_;
};

}  // namespace fraisse
