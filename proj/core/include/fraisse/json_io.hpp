#pragma once

#include <nlohmann/json.hpp>

#include "fraisse/atom_set.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json& j, const AtomSet& s);
void from_json(const nlohmann::json& j, AtomSet& s);

void to_json(nlohmann::json& j, const Vocabulary& v);
void from_json(const nlohmann::json& j, Vocabulary& v);

/// {schema_version, vocabulary, universe, relations, functions, constants}.
void to_json(nlohmann::json& j, const FiniteStructure& m);
void from_json(const nlohmann::json& j, FiniteStructure& m);

void to_json(nlohmann::json& j, const Embedding& e);
void from_json(const nlohmann::json& j, Embedding& e);

/// Throws ParseError when the document's schema_version is missing or newer
/// than this build understands.
void require_schema(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace fraisse
