#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fraisse/classes.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/structure.hpp"

using namespace fraisse;

namespace {

FiniteStructure successor_line(ElemId n) {
  Vocabulary v;
  v.add_relation("P", 1).add_function("s", 1);
  FiniteStructure m(v);
  for (std::size_t i = 0; i < n; ++i) m.add_element(i);
  for (ElemId i = 0; i < n; ++i) m.set_value("s", {i}, std::min(i + 1, n - 1));
  m.add_tuple("P", {0});
  return m;
}

FiniteStructure random_graph(ElemId n, std::mt19937_64& rng) {
  FiniteStructure g(GraphClass().vocabulary());
  for (std::size_t i = 0; i < n; ++i) g.add_element(i);
  for (ElemId i = 0; i < n; ++i)
    for (ElemId j = i + 1; j < n; ++j)
      if (rng() & 1) {
        g.add_tuple("E", {i, j});
        g.add_tuple("E", {j, i});
      }
  return g;
}

}  // namespace

TEST(Structure, ClosureFollowsFunctions) {
  const auto m = successor_line(5);
  EXPECT_EQ(closure(m, {2}), (std::set<ElemId>{2, 3, 4}));
  EXPECT_EQ(closure(m, {0}).size(), 5u);
  const auto sub = restrict_to(m, {3, 4});
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.value(0, {3}), ElemId{4});
  EXPECT_FALSE(sub.holds(0, {3}));
}

TEST(Structure, ValidateCatchesPartialFunctions) {
  Vocabulary v;
  v.add_function("s", 1);
  FiniteStructure m(v);
  m.add_element(0);
  m.add_element(1);
  m.set_value("s", {0}, 1);
  EXPECT_THROW(m.validate(), Error);
  m.set_value("s", {1}, 1);
  EXPECT_NO_THROW(m.validate());
}

TEST(Structure, CanonicalFormIsRelabelInvariant) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    const auto g = random_graph(5, rng);
    std::vector<ElemId> perm{10, 11, 12, 13, 14};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<ElemId, ElemId> ids;
    for (ElemId i = 0; i < 5; ++i) ids[i] = perm[i];
    const auto h = relabel(g, ids);
    EXPECT_EQ(canonical_form(g), canonical_form(h));
    EXPECT_TRUE(is_isomorphic(g, h));
  }
}

TEST(Structure, NonIsomorphicGraphsDiffer) {
  FiniteStructure path(GraphClass().vocabulary()), star(GraphClass().vocabulary());
  for (ElemId i = 0; i < 4; ++i) {
    path.add_element(i);
    star.add_element(i);
  }
  for (auto [a, b] : std::vector<std::pair<ElemId, ElemId>>{{0, 1}, {1, 2}, {2, 3}}) {
    path.add_tuple("E", {a, b});
    path.add_tuple("E", {b, a});
  }
  for (ElemId b : {1, 2, 3}) {
    star.add_tuple("E", {0, b});
    star.add_tuple("E", {b, 0});
  }
  EXPECT_FALSE(is_isomorphic(path, star));
  EXPECT_NE(canonical_form(path), canonical_form(star));
}

TEST(Structure, EmbeddingsOfChains) {
  // order-preserving injections of 2 into 3: C(3, 2)
  const auto two = LinearOrderClass::chain(2);
  const auto three = LinearOrderClass::chain(3);
  const auto es = enumerate_embeddings(two, three);
  EXPECT_EQ(es.size(), 3u);
  for (const auto& e : es) EXPECT_TRUE(is_embedding(two, three, e));
  EXPECT_TRUE(enumerate_embeddings(three, two).empty());
}

TEST(Structure, JsonRoundTrip) {
  const auto m = successor_line(4);
  const nlohmann::json j = m;
  EXPECT_EQ(j.get<FiniteStructure>(), m);
  nlohmann::json bad = j;
  bad["schema_version"] = 99;
  EXPECT_THROW(bad.get<FiniteStructure>(), Error);
}
