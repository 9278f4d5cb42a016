#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/k1_checks.hpp"
#include "fraisse/k1_structure.hpp"
#include "fraisse/report.hpp"

namespace fraisse {

struct AdjoinResult {
  K1Structure n;
  AtomSet b;
  std::string label;  // name of b in n
  K1Embedding e;      // m -> n
};

/// Splits every free atom in two and names b = χ_u ∨ (second copies), so that
/// R(N, b) = u and b is free from P1 of M. P0 and P2 are unchanged.
AdjoinResult adjoin_trace_element(const K1Structure& m, const std::set<ElemId>& u);

/// ⟨N_0 ⊆ ... ⊆ N_k⟩ with a witness per link and b_n in N_{n+1}.
struct GoodChain {
  std::vector<K1Structure> chain;
  std::vector<ChainLink> links;
  std::vector<AtomSet> b;
};

struct GoodOptions {
  std::size_t surplus = 2;            // new P2 elements per link
  std::optional<std::size_t> slack;   // k - 1 when unset
};

/// Chain of length k over a three-element P0 with pairwise disjoint traces
/// u_n drawn from the seed (u_{k-1} empty). Each link adjoins g_n with trace
/// u_n and `surplus` P2 elements whose rows are zero except for a fresh last
/// value; b_n = g_n Δ F_{N-1}(first new element). N = max(k, 1).
GoodChain make_good_chain(std::uint64_t seed, std::size_t k, std::size_t surplus = 2);

/// "good.links": every link passes check_free_extension; "good.a" at least
/// `surplus` new P2 elements per link; "good.b" b_n independent from P1 of
/// N_n modulo P4 of N_{n+1}; "good.c" no a in P0 of N_i lies under b_n once
/// n ≥ i + slack.
Report check_good_sequence(const GoodChain& g, const GoodOptions& options = {});

struct LabelResult {
  K1Structure labeled;
  ElemId c = 0;
  std::vector<FreeExtensionWitness> over_chain;  // N_i ⊆ labeled, H(c) = i
  std::vector<std::vector<AtomSet>> rebased;     // I'_n per link, in the top
  std::vector<std::map<ElemId, int>> h;          // H'_n per link
  /// "label.kminus1", "label.row", "label.free.<i>".
  Report report;
};

/// Rebases every link witness through b_n, raises H where a tail left I,
/// and adds c with F_n(c) = b_n. Throws PreconditionFailed if clause b, c or
/// a link witness fails, HarvestFailed naming the first link whose new P2
/// tails are all used up.
LabelResult label_good_sequence(const GoodChain& g, const GoodOptions& options = {});

}  // namespace fraisse
