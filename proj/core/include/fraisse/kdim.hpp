#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraisse/report.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

inline constexpr int kKrTruncation = 6;

/// R0..R{N-1} and total f0..f{N-1}, all of arity r+1.
Vocabulary kr_vocabulary(int r, int trunc_n = kKrTruncation);

/// A finite structure over kr_vocabulary(r, N).
struct KrStructure {
  int r = 1;
  FiniteStructure m;

  int trunc_n() const { return *m.vocabulary().index_bound(); }
  int arity() const { return r + 1; }
  std::optional<int> r_class(const Tuple& t) const;
  friend bool operator==(const KrStructure&, const KrStructure&) = default;
};

KrStructure empty_kr(int r, int trunc_n = kKrTruncation);

/// Puts t in R_n and sets f_m(t) = low[m] for m < n, f_m(t) = t[0] above.
void set_tuple(KrStructure& m, const Tuple& t, int n, const std::vector<ElemId>& low);

/// All tuples of the given arity over the universe, lexicographic.
std::vector<Tuple> all_tuples(const std::vector<ElemId>& universe, int arity);

/// Closure under every f_n. Throws ClosureDiverges past the element cap.
std::set<ElemId> closure(const KrStructure& m, const std::set<ElemId>& x);

/// Every y in Y lies outside closure(Y - {y}).
bool is_independent(const KrStructure& m, const std::set<ElemId>& y);

/// Lexicographically first independent subset of the given size.
std::optional<std::vector<ElemId>> find_independent(const KrStructure& m, std::size_t size);

/// Largest s ≤ cap with an independent s-subset.
std::size_t max_independent_size(const KrStructure& m, std::size_t cap);

/// kr0.partition, kr0.coherence, kr0.independence.
Report check_Kr0_membership(const KrStructure& m);

/// Members share one id space; overlaps are implicit.
struct KConfiguration {
  std::vector<KrStructure> members;

  std::vector<ElemId> union_universe() const;
};

/// Tuples not inside any single member, lexicographic.
std::vector<Tuple> cross_tuples(const KConfiguration& config);

struct FrugalOptions {
  /// Reorders the cross tuples before the search; identity when empty.
  std::function<void(std::vector<Tuple>&)> order;
  /// Cut a branch when even the most dependent completion keeps an
  /// independent (r+2)-set. Never changes the answer.
  bool prune = true;
};

/// First amalgam on the union of the universes, in search order. Throws
/// FrugalImpossible if some member is the whole union, NoAmalgam when the
/// search is exhausted, PreconditionFailed for a non-member and
/// InvalidArgument when members disagree on a shared tuple.
KrStructure frugal_amalgamate(const KConfiguration& config, const FrugalOptions& options = {});

/// Elements a cross tuple reaches: {f_n(t)} minus the entries of t.
using Reach = std::map<Tuple, std::set<ElemId>>;
Reach reach_of(const KrStructure& n, const std::vector<Tuple>& tuples);

/// Exhaustive oracle: every choice of reach sets for the cross tuples whose
/// completion has no independent (r+2)-set. Throws EnumerationOverflow above
/// max_elements in the union or 2^24 assignments.
std::vector<Reach> frugal_completions(const KConfiguration& config, std::size_t max_elements = 5);

enum class FrugalOutcome { kSuccess, kNoAmalgam, kFrugalImpossible };
std::string to_string(FrugalOutcome o);

struct SurveyKey {
  int r = 1;
  int k = 2;
  std::vector<std::size_t> sizes;
  std::string overlap;  // elements per Venn region, regions by member bitmask

  friend auto operator<=>(const SurveyKey&, const SurveyKey&) = default;
};

struct SurveyRow {
  SurveyKey key;
  std::size_t configs = 0;
  std::size_t success = 0;
  std::size_t no_amalgam = 0;
  std::size_t frugal_impossible = 0;
};

struct SurveyOptions {
  int trunc_n = kKrTruncation;
  std::uint64_t seed = 1;
  /// Run frugal_completions as well and record disagreements.
  bool oracle = false;
};

struct Survey {
  std::uint64_t seed = 0;
  std::vector<SurveyRow> rows;
  std::vector<SurveyRow> oracle_rows;  // only with options.oracle
  Report report;
};

/// Sampled configurations per shape, deterministic in the seed. A shape is a
/// Venn-region count vector for k members whose union has at most `bound`
/// elements.
std::vector<std::pair<SurveyKey, KConfiguration>> survey_configurations(int r, int k, std::size_t bound,
                                                                        std::size_t budget,
                                                                        const SurveyOptions& options = {});
FrugalOutcome run_frugal(const KConfiguration& config, KrStructure* out = nullptr);
FrugalOutcome oracle_outcome(const KConfiguration& config);

Survey survey_k_disjoint_ap(int r, int k, std::size_t bound, std::size_t budget, const SurveyOptions& options = {});

std::string survey_csv(const std::vector<SurveyRow>& rows);
std::string survey_pretty(const std::vector<SurveyRow>& rows);

void to_json(nlohmann::json& j, const KrStructure& m);
void from_json(const nlohmann::json& j, KrStructure& m);
void to_json(nlohmann::json& j, const KConfiguration& c);
void from_json(const nlohmann::json& j, KConfiguration& c);
void to_json(nlohmann::json& j, const SurveyRow& row);
void to_json(nlohmann::json& j, const Survey& s);

}  // namespace fraisse
