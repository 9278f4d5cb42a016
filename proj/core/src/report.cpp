#include "fraisse/report.hpp"

#include <algorithm>

namespace fraisse {

void Report::add(std::string id, bool pass, std::string detail, nlohmann::json witness) {
  items_.push_back({std::move(id), pass, std::move(detail), std::move(witness)});
}

void Report::merge(const Report& other) { items_.insert(items_.end(), other.items_.begin(), other.items_.end()); }

bool Report::passed() const {
  return std::all_of(items_.begin(), items_.end(), [](const ClauseResult& c) { return c.pass; });
}

std::vector<std::string> Report::failed_ids() const {
  std::vector<std::string> out;
  for (const auto& c : items_)
    if (!c.pass && std::find(out.begin(), out.end(), c.id) == out.end()) out.push_back(c.id);
  return out;
}

bool Report::failed(const std::string& id) const {
  return std::any_of(items_.begin(), items_.end(), [&](const ClauseResult& c) { return !c.pass && c.id == id; });
}

void to_json(nlohmann::json& j, const ClauseResult& c) {
  j = {{"id", c.id}, {"pass", c.pass}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.witness.is_null()) j["witness"] = c.witness;
}

void to_json(nlohmann::json& j, const Report& r) {
  j = {{"pass", r.passed()}, {"items", r.items()}};
}

}  // namespace fraisse
