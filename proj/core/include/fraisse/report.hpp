#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fraisse {

/// One evaluated clause. `witness` carries whatever data pins down a failure
/// (offending ids, elements as hex, sign patterns, ...).
struct ClauseResult {
  std::string id;
  bool pass = true;
  std::string detail;
  nlohmann::json witness;
};

class Report {
 public:
  void add(std::string id, bool pass, std::string detail = {}, nlohmann::json witness = nullptr);
  void merge(const Report& other);

  bool passed() const;
  const std::vector<ClauseResult>& items() const { return items_; }
  /// Ids of failing clauses, in evaluation order without repeats.
  std::vector<std::string> failed_ids() const;
  bool failed(const std::string& id) const;

 private:
  std::vector<ClauseResult> items_;
};

void to_json(nlohmann::json& j, const ClauseResult& c);
void to_json(nlohmann::json& j, const Report& r);

}  // namespace fraisse
