#include <gtest/gtest.h>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_amalgam.hpp"
#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_json.hpp"

using namespace fraisse;

namespace {

K1Presentation pres(std::vector<ElemId> p0, std::vector<ElemId> p2, std::map<ElemId, std::set<ElemId>> trace) {
  K1Presentation p;
  p.trunc_n = 2;
  p.n_star = 1;
  p.p0 = std::move(p0);
  p.p2 = std::move(p2);
  for (ElemId c : p.p2) p.trace[c] = {trace[c]};
  validate(p);
  return p;
}

std::string canon(const K1Presentation& p) { return nlohmann::json(canonical_form(encode(p))).dump(); }

}  // namespace

TEST(K1Amalgam, LeastNStar) {
  EXPECT_EQ(least_n_star(minimal_model(2)), 0);
  const auto m = materialize(pres({0}, {1}, {{1, {0}}}));
  ASSERT_TRUE(least_n_star(m).has_value());
  EXPECT_LE(*least_n_star(m), 1);
}

TEST(K1Amalgam, FreeAmalgamOverASharedPoint) {
  const auto m1 = pres({0, 1}, {2}, {{2, {0, 1}}});
  const auto n1 = pres({0}, {}, {});
  const auto n2 = pres({0, 5}, {6}, {{6, {5}}});
  const auto r = amalgamate_free(materialize(m1), materialize(n1), materialize(n2));
  EXPECT_TRUE(r.report.passed()) << nlohmann::json(r.report).dump();
  EXPECT_EQ(r.fresh_atoms.size(), 1u);
  EXPECT_EQ(r.n2_ids.at(0), 0u);
  EXPECT_GE(r.n2_ids.at(5), 3u);
  EXPECT_EQ(r.m2.p0.size(), 3u);
  EXPECT_EQ(r.m2.p2.size(), 2u);

  // the free amalgam is one of the completions, namely the one with no new incidences
  const auto mine = canon(to_presentation(r.m2, r.n_star));
  EXPECT_EQ(mine, canon(presentation_amalgam(m1, n1, n2)));
  bool found = false;
  for (const auto& p : completion_oracle(m1, n1, n2)) found = found || canon(p) == mine;
  EXPECT_TRUE(found);
}

TEST(K1Amalgam, MismatchedBaseIsRejected) {
  const auto m1 = materialize(pres({0}, {}, {}));
  const auto n1 = materialize(pres({7}, {}, {}));
  const auto n2 = materialize(pres({7, 8}, {}, {}));
  EXPECT_THROW(amalgamate_free(m1, n1, n2), Error);
}

TEST(K1Amalgam, DisjointAmalgam) {
  const auto m0 = materialize(pres({0}, {}, {}));
  const auto m1 = materialize(pres({0, 1}, {2}, {{2, {1}}}));
  const auto m2 = materialize(pres({0, 3}, {}, {}));
  const auto r = disjoint_amalgamate_k1(m0, m1, m2);
  EXPECT_TRUE(r.report.passed()) << nlohmann::json(r.report).dump();
  EXPECT_EQ(r.m3.p0.size(), 3u);
  EXPECT_TRUE(check_K1(r.m3, r.witness).passed());
}

TEST(K1Amalgam, CompletionsContainOnlyMembers) {
  const auto m1 = pres({0, 1}, {}, {});
  const auto n1 = pres({0}, {}, {});
  const auto n2 = pres({0}, {4}, {{4, {0}}});
  const auto all = completion_oracle(m1, n1, n2);
  // element 1 of M1 may or may not be under the new row
  EXPECT_EQ(all.size(), 2u);
  for (const auto& p : all) {
    const auto m = materialize(p);
    EXPECT_TRUE(check_Kminus1(m).passed());
    EXPECT_TRUE(check_K1(m, presentation_witness(p)).passed());
  }
}
