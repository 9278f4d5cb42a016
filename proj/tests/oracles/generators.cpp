#include "generators.hpp"

#include <algorithm>

namespace oracle {

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

AtomSet random_element(std::mt19937_64& rng, std::size_t w) {
  AtomSet x(w);
  for (std::size_t i = 0; i < w; ++i)
    if (rng() & 1) x.set(i);
  return x;
}

// Drops atom i from every set, narrowing by one.
std::vector<AtomSet> drop_atom(const std::vector<AtomSet>& xs, std::size_t i) {
  std::vector<AtomSet> out;
  for (const auto& x : xs) {
    AtomSet y(x.width() - 1);
    for (std::size_t a : x.indices())
      if (a != i) y.set(a < i ? a : a - 1);
    out.push_back(y);
  }
  return out;
}

// Atoms laid out as (block, code) cells followed by `extra` loose atoms.
// Returns block sets, coordinate sets and the loose atoms.
struct Grid {
  std::size_t w = 0;
  std::vector<AtomSet> blocks;
  std::vector<AtomSet> coords;
  AtomSet loose;
};

Grid grid(std::size_t blocks, std::size_t k, std::size_t extra) {
  Grid g;
  const std::size_t cells = blocks << k;
  g.w = cells + extra;
  g.blocks.assign(blocks, AtomSet(g.w));
  g.coords.assign(k, AtomSet(g.w));
  g.loose = AtomSet(g.w);
  for (std::size_t c = 0; c < cells; ++c) {
    g.blocks[c >> k].set(c);
    for (std::size_t j = 0; j < k; ++j)
      if (c >> j & 1) g.coords[j].set(c);
  }
  for (std::size_t i = cells; i < g.w; ++i) g.loose.set(i);
  return g;
}

}  // namespace

IndependenceInstance independence_instance(std::mt19937_64& rng) {
  IndependenceInstance in;
  if (rng() & 1) {
    in.w = 1 + below(rng, 16);
    in.ideal = random_element(rng, in.w);
    if (rng() % 3 == 0) in.ideal = AtomSet(in.w);
    for (std::size_t i = below(rng, 4); i > 0; --i) in.x.push_back(random_element(rng, in.w));
    for (std::size_t i = below(rng, 4); i > 0; --i) in.y.insert(random_element(rng, in.w));
    return in;
  }
  const std::size_t k = 1 + below(rng, 3);
  const std::size_t blocks = 1 + below(rng, k == 3 ? 2 : 3);
  const std::size_t room = 16 - (blocks << k);
  Grid g = grid(blocks, k, std::min<std::size_t>(room, below(rng, 4)));
  in.w = g.w;
  in.ideal = g.loose;
  // loose atoms sit in the ideal, so they may join anything
  for (auto& b : g.blocks)
    for (std::size_t a : g.loose.indices())
      if (rng() & 1) b.set(a);
  for (auto& c : g.coords)
    for (std::size_t a : g.loose.indices())
      if (rng() & 1) c.set(a);
  in.x = g.blocks;
  if (in.x.size() > 3) in.x.resize(3);
  std::vector<AtomSet> y = g.coords;
  if (rng() % 3 == 0 && in.w > 1) {
    const std::size_t i = below(rng, in.w);
    auto all = in.x;
    all.insert(all.end(), y.begin(), y.end());
    all.push_back(in.ideal);
    all = drop_atom(all, i);
    in.w -= 1;
    in.ideal = all.back();
    in.x.assign(all.begin(), all.begin() + static_cast<long>(in.x.size()));
    y.assign(all.begin() + static_cast<long>(in.x.size()), all.end() - 1);
  }
  in.y = std::set<AtomSet>(y.begin(), y.end());
  return in;
}

ChainInstance chain_instance(std::mt19937_64& rng) {
  ChainInstance in;
  const std::size_t k0 = 1 + below(rng, 2);
  const std::size_t k1 = 1 + below(rng, 2);
  const std::size_t blocks = 1 + below(rng, 2);
  const std::size_t extra = below(rng, 3);
  Grid g = grid(blocks, k0 + k1, extra);
  in.w = g.w;
  in.ideal = g.loose;
  in.b0 = g.blocks;
  in.j0.assign(g.coords.begin(), g.coords.begin() + static_cast<long>(k0));
  in.j1.assign(g.coords.begin() + static_cast<long>(k0), g.coords.end());
  for (std::size_t a : g.loose.indices()) {
    if (rng() & 1) in.b0[below(rng, in.b0.size())].set(a);
    if (rng() & 1) in.j0[below(rng, k0)].set(a);
    if (rng() & 1) in.j1[below(rng, k1)].set(a);
  }
  in.b1 = in.b0;
  in.b1.insert(in.b1.end(), in.j0.begin(), in.j0.end());
  if (g.loose.any() && (rng() & 1)) in.b1.push_back(g.loose);
  switch (rng() % 4) {
    case 0:  // damage: an atom disappears
      if (in.w > 1) {
        const std::size_t i = below(rng, in.w);
        std::vector<AtomSet> all = in.b0;
        for (const auto* v : {&in.b1, &in.j0, &in.j1}) all.insert(all.end(), v->begin(), v->end());
        all.push_back(in.ideal);
        all = drop_atom(all, i);
        in.w -= 1;
        std::size_t at = 0;
        for (auto* v : {&in.b0, &in.b1, &in.j0, &in.j1})
          for (auto& x : *v) x = all[at++];
        in.ideal = all[at];
      }
      break;
    case 1:  // J1 picks up a random element
      in.j1.push_back(random_element(rng, in.w));
      break;
    default:
      break;
  }
  return in;
}

RebaseInstance rebase_instance(std::mt19937_64& rng) {
  RebaseInstance in;
  const std::size_t k = 1 + below(rng, 3);
  const std::size_t blocks = 1 + below(rng, 2);
  const std::size_t extra = below(rng, 4);
  Grid g = grid(blocks, k, extra);
  // a second atom in some cells, so the blocks are not all the same size
  std::vector<std::size_t> doubled;
  for (std::size_t c = 0; c < (blocks << k); ++c)
    if (rng() % 4 == 0) doubled.push_back(c);
  const std::size_t w = g.w + doubled.size();
  auto widen = [&](const AtomSet& x) {
    AtomSet y = x.resized(w);
    for (std::size_t i = 0; i < doubled.size(); ++i)
      if (x.test(doubled[i])) y.set(g.w + i);
    return y;
  };
  in.w = w;
  in.ideal = g.loose.resized(w);
  for (const auto& b : g.blocks) in.b1.push_back(widen(b));
  for (const auto& c : g.coords) in.j1.push_back(widen(c));
  for (std::size_t a : g.loose.indices())
    for (auto& j : in.j1)
      if (rng() & 1) j.set(a);
  // b: half of the 2^k code classes, plus some ideal atoms
  std::vector<std::size_t> codes(std::size_t{1} << k);
  for (std::size_t c = 0; c < codes.size(); ++c) codes[c] = c;
  std::shuffle(codes.begin(), codes.end(), rng);
  in.b = AtomSet(w);
  for (std::size_t i = 0; i < codes.size() / 2; ++i)
    for (std::size_t blk = 0; blk < blocks; ++blk) in.b |= widen(AtomSet::single(g.w, (blk << k) | codes[i]));
  for (std::size_t a : g.loose.indices())
    if (rng() & 1) in.b.set(a);
  return in;
}

}  // namespace oracle
