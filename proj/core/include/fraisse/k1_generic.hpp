#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/engine.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_structure.hpp"
#include "fraisse/report.hpp"

namespace fraisse {

/// Finite members of K1 through their presentations (see encode). Two
/// presentations embed exactly when their materializations do, and
/// amalgamation is free.
class K1PresentationClass : public AmalgamationClass {
 public:
  K1PresentationClass(int n_star, int trunc_n);
  std::string name() const override { return "k1_presentations"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  bool contains(const FiniteStructure& m) const override;
  std::vector<FiniteStructure> members(std::size_t bound) const override;
  std::optional<Amalgam> amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                    const FiniteStructure& right, const Embedding& base_to_left,
                                    const Embedding& base_to_right) const override;

  int n_star() const { return n_star_; }
  int trunc_n() const { return trunc_n_; }

 private:
  int n_star_;
  int trunc_n_;
  Vocabulary vocab_;
};

struct K1GenericOptions {
  int n_star = 1;
  int trunc_n = 6;
  std::size_t bound = 3;
  int seed = 2;  // which seed model, see k1_seed
};

/// Seed models: 0 is empty, 1 has two P0 and two P2 elements each matched
/// once, 2 adds a third pair and one crossing incidence (it contains every
/// member with at most three elements), 3 extends 2 by two more elements.
K1Presentation k1_seed(int which, int n_star, int trunc_n);

struct K1Generic {
  GenericApproximation approx;
  K1Presentation top;
  PresentationFreeWitness over_minimal;  // composed along the chain
  std::set<ElemId> core;                 // universe of the saturated core, empty if none
  /// "generic.ledger", "generic.defect", "generic.free_over_minimal", then
  /// nonoise items on the core heads.
  Report report;
  std::vector<Defect> defects;
};

K1Generic build_generic_k1(std::size_t steps, const K1GenericOptions& options = {});

void to_json(nlohmann::json& j, const K1Generic& g);

}  // namespace fraisse
