#pragma once

#include <nlohmann/json.hpp>

#include "fraisse/k1_amalgam.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_good.hpp"
#include "fraisse/k1_structure.hpp"

namespace fraisse {

/// {kind: "k1", schema_version, trunc_n, P0, P2, atoms, designated_atoms,
/// b_star, G1, F_table, free_generators}. Ids are object keys in decimal.
void to_json(nlohmann::json& j, const K1Structure& m);
void from_json(const nlohmann::json& j, K1Structure& m);

/// {n_star, chain: [[block, ...], ...], b_star}.
void to_json(nlohmann::json& j, const K1Witness& w);
/// Needs the atom count; reads blocks as given.
K1Witness witness_from_json(const nlohmann::json& j);

/// {kind: "k1_presentation", schema_version, trunc_n, n_star, P0, P2, traces, named}.
void to_json(nlohmann::json& j, const K1Presentation& p);
void from_json(const nlohmann::json& j, K1Presentation& p);

void to_json(nlohmann::json& j, const K1Embedding& e);
void from_json(const nlohmann::json& j, K1Embedding& e);

void to_json(nlohmann::json& j, const FreeExtensionWitness& w);
void from_json(const nlohmann::json& j, FreeExtensionWitness& w);

void to_json(nlohmann::json& j, const PresentationFreeWitness& w);

void to_json(nlohmann::json& j, const FreeAmalgamResult& r);
void to_json(nlohmann::json& j, const DisjointAmalgamResult& r);

/// {kind: "k1_chain", chain, links: [{embedding, witness}], b}.
void to_json(nlohmann::json& j, const GoodChain& g);
void from_json(const nlohmann::json& j, GoodChain& g);
void to_json(nlohmann::json& j, const LabelResult& r);

/// Either form: explicit structures load as they are, presentations are
/// materialized.
K1Structure k1_from_json(const nlohmann::json& j);

}  // namespace fraisse
