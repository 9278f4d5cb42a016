#include <gtest/gtest.h>

#include <random>

#include "fraisse/atom_set.hpp"

using fraisse::AtomSet;

TEST(AtomSet, BasicOperations) {
  AtomSet a(10, {1, 3, 5});
  AtomSet b(10, {3, 4});
  EXPECT_EQ(a.count(), 3u);
  EXPECT_EQ((a & b), AtomSet(10, {3}));
  EXPECT_EQ((a | b), AtomSet(10, {1, 3, 4, 5}));
  EXPECT_EQ((a ^ b), AtomSet(10, {1, 4, 5}));
  EXPECT_EQ((a - b), AtomSet(10, {1, 5}));
  EXPECT_EQ((~a).count(), 7u);
  EXPECT_TRUE(AtomSet(10, {3}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(AtomSet(10).any());
  EXPECT_TRUE(AtomSet::full(10).all());
}

TEST(AtomSet, IterationAcrossWords) {
  AtomSet s(130, {0, 63, 64, 129});
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 63, 64, 129}));
  EXPECT_EQ(s.next(1), 63u);
  EXPECT_EQ(s.next(130), AtomSet::npos);
  EXPECT_EQ((~s).count(), 126u);
  EXPECT_EQ(AtomSet::full(130).count(), 130u);
}

TEST(AtomSet, HexRoundTrip) {
  std::mt19937_64 rng(1);
  for (std::size_t w : {1u, 7u, 64u, 65u, 200u}) {
    AtomSet s(w);
    for (std::size_t i = 0; i < w; ++i) s.set(i, rng() & 1);
    EXPECT_EQ(AtomSet::from_hex(s.to_hex()), s);
  }
}

TEST(AtomSet, MaskAndOrdering) {
  EXPECT_EQ(AtomSet::from_mask(4, 0b1010), AtomSet(4, {1, 3}));
  EXPECT_EQ(AtomSet::from_mask(4, 0b1010).low_mask(), 0b1010u);
  EXPECT_LT(AtomSet::from_mask(4, 1), AtomSet::from_mask(4, 2));
  EXPECT_NE(AtomSet(3), AtomSet(4));
}
