#include <gtest/gtest.h>

#include "fraisse/classes.hpp"
#include "fraisse/engine.hpp"
#include "fraisse/error.hpp"

using namespace fraisse;

TEST(Engine, MembersAreSortedAndDistinct) {
  const GraphClass g;
  const auto ms = g.members(3);
  // 1 + 1 + 2 + 4 isomorphism types of graphs on 0..3 vertices
  EXPECT_EQ(ms.size(), 8u);
  for (std::size_t i = 1; i < ms.size(); ++i) {
    EXPECT_LE(ms[i - 1].size(), ms[i].size());
    EXPECT_FALSE(is_isomorphic(ms[i - 1], ms[i]));
  }
}

TEST(Engine, AmalgamationPropertiesOfTheExampleClasses) {
  EXPECT_TRUE(check_disjoint_ap(GraphClass(), 3).holds);
  EXPECT_TRUE(check_jep(GraphClass(), 3).holds);
  EXPECT_TRUE(check_disjoint_ap(LinearOrderClass(), 3).holds);

  const auto fields = check_disjoint_ap(CharTwoFieldClass(), 4);
  EXPECT_FALSE(fields.holds);
  EXPECT_FALSE(fields.counterexample.is_null());

  const auto jep = check_jep(ExplicitListClass::jep_counterexample(), 1);
  EXPECT_FALSE(jep.holds);
}

TEST(Engine, GenericLinearOrderIsRich) {
  const LinearOrderClass k;
  const auto g = build_generic(k, 60, LinearOrderClass::chain(1), {3});
  EXPECT_NO_THROW(verify_ledger(g));
  for (const auto& m : g.chain) EXPECT_TRUE(k.contains(m));
  const auto core = g.saturated_core();
  ASSERT_TRUE(core.has_value());
  const auto& u = g.chain[*core].universe();
  EXPECT_TRUE(richness_defect(g.last(), k, 3, std::set<ElemId>(u.begin(), u.end())).empty());
}

TEST(Engine, RichnessDefectSeesAMissingExtension) {
  // a 1-element order cannot realize "one point above and one below"
  const LinearOrderClass k;
  EXPECT_FALSE(richness_defect(LinearOrderClass::chain(1), k, 3).empty());
}

TEST(Engine, BackAndForthSeparatesOrdersOfDifferentLength) {
  EXPECT_TRUE(back_and_forth_check(LinearOrderClass::chain(4), LinearOrderClass::chain(4), 3));
  EXPECT_FALSE(back_and_forth_check(LinearOrderClass::chain(1), LinearOrderClass::chain(2), 2));
}

TEST(Engine, TwoGenericOrdersAgreeOnTheirArenas) {
  const LinearOrderClass k;
  const auto a = build_generic(k, 80, LinearOrderClass::chain(1), {3});
  const auto b = build_generic(k, 80, LinearOrderClass::chain(2), {3});
  const auto am = saturation_arena(a, 3);
  const auto an = saturation_arena(b, 3);
  ASSERT_TRUE(am && an);
  EXPECT_TRUE(back_and_forth_check(a.last(), b.last(), 3, *am, *an));
}

TEST(Engine, SeparabilityOfAnEdge) {
  const GraphClass k;
  FiniteStructure e(k.vocabulary());
  e.add_element(0);
  e.add_element(1);
  e.add_tuple("E", {0, 1});
  e.add_tuple("E", {1, 0});
  const auto s = separability_witness(k, e, {0, 1}, 2);
  EXPECT_EQ(s.verdict, Separability::kCertified);
  EXPECT_TRUE(satisfies(e, {0, 1}, s.formula));
  EXPECT_FALSE(satisfies(e, {0, 0}, s.formula));
}
