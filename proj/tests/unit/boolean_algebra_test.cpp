#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ba_oracles.hpp"
#include "generators.hpp"
#include "fraisse/boolean_algebra.hpp"
#include "fraisse/error.hpp"

using namespace fraisse;

TEST(BooleanAlgebra, GeneratedSubalgebraMatchesClosure) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 50; ++round) {
    const std::size_t w = 1 + rng() % 10;
    std::vector<AtomSet> gens;
    for (std::size_t g = rng() % 4; g-- > 0;) gens.push_back(AtomSet::from_mask(w, rng()));
    const auto s = Subalgebra::generated_by(w, gens);
    const auto all = oracle::generated_elements(w, gens);
    EXPECT_EQ(std::size_t{1} << s.size_log2(), all.size());
    for (const auto& x : oracle::all_elements(w)) EXPECT_EQ(s.contains(x), all.contains(x));
  }
}

TEST(BooleanAlgebra, LocalCoordinatesRoundTrip) {
  const auto s = Subalgebra::generated_by(6, {AtomSet(6, {0, 1, 2}), AtomSet(6, {2, 3})});
  ASSERT_EQ(s.size_log2(), 4u);
  const AtomSet x(6, {0, 1, 4, 5});
  ASSERT_TRUE(s.contains(x));
  EXPECT_EQ(s.from_local(s.to_local(x)), x);
  EXPECT_EQ(s.block_of(0), s.block_of(1));
  EXPECT_NE(s.block_of(2), s.block_of(3));
}

TEST(BooleanAlgebra, QuotientKillsTheIdeal) {
  const FiniteBooleanAlgebra b(5);
  const auto q = quotient(b, {AtomSet(5, {1, 3})});
  EXPECT_EQ(q.algebra.atom_count(), 3u);
  EXPECT_EQ(q.project(AtomSet(5, {1, 3})), AtomSet(3));
  EXPECT_EQ(q.lift(q.project(AtomSet(5, {0, 1})), 5), AtomSet(5, {0}));
  EXPECT_THROW(quotient(b, {AtomSet::full(5)}), Error);
}

TEST(BooleanAlgebra, IndependenceAgreesWithOracleOnSmallDraws) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracle::independence_instance(rng);
    const std::vector<AtomSet> y(inst.y.begin(), inst.y.end());
    const bool fast = is_independent_mod_ideal(inst.w, y, inst.x, {inst.ideal});
    EXPECT_EQ(fast, oracle::dnf_independent(inst.w, inst.y, inst.x, inst.ideal)) << "draw " << i;
    EXPECT_EQ(fast, !find_independence_violation(inst.w, y, inst.x, {inst.ideal}).has_value());
  }
}

TEST(BooleanAlgebra, EmptyFamilyIsIndependent) {
  EXPECT_TRUE(is_independent_mod_ideal(4, {}, {AtomSet(4, {0})}, PrincipalIdeal::zero(4)));
}

TEST(BooleanAlgebra, PushoutOfTwoSplittings) {
  // C = 2 atoms; A splits the first, B splits the second
  const BAEmbedding ca{3, {AtomSet(3, {0, 1}), AtomSet(3, {2})}};
  const BAEmbedding cb{3, {AtomSet(3, {0}), AtomSet(3, {1, 2})}};
  const auto d = pushout(3, 3, ca, cb);
  EXPECT_EQ(d.algebra.atom_count(), 4u);
  EXPECT_EQ(d.atom_pairs.size(), 4u);
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(d.from_a.apply(ca.image[i]), d.from_b.apply(cb.image[i]));
  EXPECT_NO_THROW(d.from_a.validate());
}

TEST(BooleanAlgebra, BasisThroughHalfElements) {
  const FiniteBooleanAlgebra f(16);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    std::vector<std::size_t> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const AtomSet b = AtomSet::from_indices(16, {perm.begin(), perm.begin() + 8});
    const auto basis = find_basis_containing(f, 4, b);
    EXPECT_EQ(basis.front(), b);
    EXPECT_TRUE(oracle::is_free_basis(4, basis));
  }
  EXPECT_THROW(find_basis_containing(f, 4, AtomSet(16, {0, 1, 2})), Error);
}

TEST(BooleanAlgebra, RebasePostconditions) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto inst = oracle::rebase_instance(rng);
    const auto next = rebase_with_element(FiniteBooleanAlgebra(inst.w), Subalgebra::generated_by(inst.w, inst.b1),
                                          {inst.ideal}, inst.j1, inst.b);
    EXPECT_NE(std::find(next.begin(), next.end(), inst.b), next.end());
    EXPECT_TRUE(is_independent_mod_ideal(inst.w, next, inst.b1, {inst.ideal}));
    EXPECT_EQ(oracle::signature_atoms(inst.w, next, inst.ideal), oracle::signature_atoms(inst.w, inst.j1, inst.ideal));
  }
}

TEST(BooleanAlgebra, PushoutIndependenceNeedsAProperIdeal) {
  const BAEmbedding ca{2, {AtomSet::full(2)}};
  const auto d = pushout(2, 2, ca, ca);
  EXPECT_THROW(pushout_independence(d, {AtomSet(2, {0})}, {AtomSet::full(4)}), Error);
}

TEST(BooleanAlgebra, JsonRoundTrip) {
  FiniteBooleanAlgebra b(6, AtomSet(6, {0, 2}));
  b.name("g", AtomSet(6, {4, 5}));
  const nlohmann::json j = b;
  EXPECT_EQ(j.get<FiniteBooleanAlgebra>(), b);
  const BAEmbedding e{4, {AtomSet(4, {0, 1}), AtomSet(4, {2, 3})}};
  EXPECT_EQ(nlohmann::json(e).get<BAEmbedding>(), e);
}
