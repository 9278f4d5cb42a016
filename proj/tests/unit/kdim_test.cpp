#include <gtest/gtest.h>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/kdim.hpp"

using namespace fraisse;

namespace {

// r = 1: points {0, 1} with the pair (0, 1) reaching 0 at level 1
KrStructure pair_member(ElemId a, ElemId b) {
  KrStructure m = empty_kr(1);
  m.m.add_element(a);
  m.m.add_element(b);
  for (const auto& t : all_tuples({a, b}, 2)) set_tuple(m, t, 0, {});
  return m;
}

}  // namespace

TEST(Kdim, VocabularyShape) {
  const auto v = kr_vocabulary(2, 4);
  EXPECT_EQ(v.relations().size(), 4u);
  EXPECT_EQ(v.functions().size(), 4u);
  EXPECT_EQ(v.relations().front().arity, 3);
  EXPECT_EQ(v.index_bound(), 4);
}

TEST(Kdim, TuplesIncludeRepeats) {
  EXPECT_EQ(all_tuples({0, 1}, 2).size(), 4u);
  EXPECT_EQ(all_tuples({0, 1, 2}, 2).front(), (Tuple{0, 0}));
}

TEST(Kdim, SmallMembersAndIndependence) {
  const auto m = pair_member(0, 1);
  EXPECT_TRUE(check_Kr0_membership(m).passed()) << nlohmann::json(check_Kr0_membership(m)).dump();
  EXPECT_EQ(closure(m, {0}), (std::set<ElemId>{0}));
  EXPECT_TRUE(is_independent(m, {0, 1}));
  EXPECT_LE(max_independent_size(m, 4), 2u);
}

TEST(Kdim, JsonRoundTrip) {
  const auto m = pair_member(3, 4);
  const nlohmann::json j = m;
  const auto back = j.get<KrStructure>();
  EXPECT_EQ(back.r, 1);
  EXPECT_EQ(back.m, m.m);
}

TEST(Kdim, DisjointPairOfPairsAmalgamates) {
  KConfiguration config;
  config.members = {pair_member(0, 1), pair_member(1, 2)};
  EXPECT_EQ(config.union_universe().size(), 3u);
  EXPECT_FALSE(cross_tuples(config).empty());
  KrStructure out;
  const auto outcome = run_frugal(config, &out);
  EXPECT_EQ(outcome, oracle_outcome(config));
  if (outcome == FrugalOutcome::kSuccess) {
    EXPECT_TRUE(check_Kr0_membership(out).passed());
    EXPECT_EQ(out.m.size(), 3u);
    EXPECT_LE(max_independent_size(out, 4), 2u);
  }
}

TEST(Kdim, MemberAsLargeAsTheUnionIsFrugalImpossible) {
  KConfiguration config;
  config.members = {pair_member(0, 1), pair_member(0, 1)};
  EXPECT_EQ(run_frugal(config), FrugalOutcome::kFrugalImpossible);
}

TEST(Kdim, SurveyIsDeterministicAndMatchesOracle) {
  SurveyOptions options;
  options.oracle = true;
  const auto a = survey_k_disjoint_ap(1, 2, 3, 5, options);
  const auto b = survey_k_disjoint_ap(1, 2, 3, 5, options);
  EXPECT_EQ(survey_csv(a.rows), survey_csv(b.rows));
  EXPECT_EQ(survey_csv(a.rows), survey_csv(a.oracle_rows));
  EXPECT_TRUE(a.report.passed());
  EXPECT_EQ(survey_csv(a.rows).rfind("r,k,sizes,overlap,configs,success,no_amalgam,frugal_impossible\n", 0), 0u);
}

TEST(Kdim, UnionBoundOneLeavesNothingToAmalgamate) {
  const auto s = survey_k_disjoint_ap(1, 2, 1, 5);
  for (const auto& row : s.rows) EXPECT_EQ(row.frugal_impossible, row.configs);
}

TEST(Kdim, TriangleOfPairsHasNoFrugalAmalgam) {
  // three members pairwise sharing one point: the overlaps pin the cross tuples
  const auto s = survey_k_disjoint_ap(1, 3, 3, 10);
  std::size_t no_amalgam = 0;
  for (const auto& row : s.rows) no_amalgam += row.no_amalgam;
  EXPECT_GT(no_amalgam, 0u);
}
