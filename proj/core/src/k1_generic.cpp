#include "fraisse/k1_generic.hpp"

#include <algorithm>

#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/k1_json.hpp"

namespace fraisse {

K1PresentationClass::K1PresentationClass(int n_star, int trunc_n)
    : n_star_(n_star), trunc_n_(trunc_n), vocab_(presentation_vocabulary(n_star, trunc_n)) {
  if (n_star < 0 || n_star >= trunc_n) throw Error(ErrorCode::kInvalidArgument, "n* must lie in [0, N)");
}

bool K1PresentationClass::contains(const FiniteStructure& m) const {
  if (!(m.vocabulary() == vocab_)) return false;
  for (ElemId e : m.universe())
    if (m.holds(0, {e}) == m.holds(1, {e})) return false;
  for (std::size_t r = 2; r < vocab_.relations().size(); ++r)
    for (const auto& t : m.tuples(r))
      if (!m.holds(0, {t[0]}) || !m.holds(1, {t[1]})) return false;
  return true;
}

std::vector<FiniteStructure> K1PresentationClass::members(std::size_t bound) const {
  std::vector<FiniteStructure> out;
  std::set<std::string> seen;
  for (std::size_t n = 0; n <= bound; ++n) {
    for (std::size_t p = 0; p <= n; ++p) {
      K1Presentation shape;
      shape.trunc_n = trunc_n_;
      shape.n_star = n_star_;
      for (std::size_t i = 0; i < p; ++i) shape.p0.push_back(static_cast<ElemId>(i));
      for (std::size_t i = p; i < n; ++i) shape.p2.push_back(static_cast<ElemId>(i));
      const std::size_t bits = static_cast<std::size_t>(n_star_) * p * (n - p);
      if (bits > 24) throw Error(ErrorCode::kEnumerationOverflow, "presentation enumeration needs too many bits");
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        K1Presentation q = shape;
        std::size_t bit = 0;
        for (ElemId c : q.p2) {
          auto& rows = q.trace[c];
          rows.resize(static_cast<std::size_t>(n_star_));
          for (auto& row : rows)
            for (ElemId a : q.p0)
              if (mask >> bit++ & 1) row.insert(a);
        }
        FiniteStructure canon = canonical_form(encode(q));
        if (seen.insert(nlohmann::json(canon).dump()).second) out.push_back(std::move(canon));
      }
    }
  }
  sort_by_size_and_form(out);
  return out;
}

std::optional<Amalgam> K1PresentationClass::amalgamate(const FiniteStructure& base, const FiniteStructure& left,
                                                       const FiniteStructure& right, const Embedding& base_to_left,
                                                       const Embedding& base_to_right) const {
  (void)base;
  if (!(left.vocabulary() == vocab_) || !(right.vocabulary() == vocab_))
    throw Error(ErrorCode::kVocabularyMismatch, "not a presentation of this class");
  return free_amalgam(left, right, base_to_left, base_to_right);
}

K1Presentation k1_seed(int which, int n_star, int trunc_n) {
  K1Presentation p;
  p.trunc_n = trunc_n;
  p.n_star = n_star;
  auto link = [&](ElemId a, ElemId c) {
    for (auto& row : p.trace[c]) row.insert(a);
  };
  auto add_c = [&](ElemId c) {
    p.p2.push_back(c);
    p.trace[c].resize(static_cast<std::size_t>(n_star));
  };
  switch (which) {
    case 0:
      break;
    case 1:
      p.p0 = {0, 1};
      add_c(2);
      add_c(3);
      link(0, 2);
      link(1, 3);
      break;
    case 2:
      p.p0 = {0, 1, 2};
      add_c(3);
      add_c(4);
      add_c(5);
      link(0, 3);
      link(1, 4);
      link(2, 5);
      link(0, 4);
      break;
    case 3:
      p.p0 = {0, 1, 2, 6};
      add_c(3);
      add_c(4);
      add_c(5);
      add_c(7);
      link(0, 3);
      link(1, 4);
      link(2, 5);
      link(0, 4);
      link(6, 5);
      link(1, 7);
      link(2, 7);
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument, "no seed " + std::to_string(which));
  }
  validate(p);
  return p;
}

namespace {

std::map<ElemId, ElemId> identity_p2(const K1Presentation& p) {
  std::map<ElemId, ElemId> out;
  for (ElemId c : p.p2) out[c] = c;
  return out;
}

}  // namespace

K1Generic build_generic_k1(std::size_t steps, const K1GenericOptions& options) {
  const K1PresentationClass k(options.n_star, options.trunc_n);
  const K1Presentation seed = k1_seed(options.seed, options.n_star, options.trunc_n);
  K1Generic out;
  out.approx = build_generic(k, steps, encode(seed), GenericOptions{options.bound});
  try {
    verify_ledger(out.approx);
    out.report.add("generic.ledger", true);
  } catch (const Error& e) {
    out.report.add("generic.ledger", false, e.what());
  }
  out.top = decode(out.approx.last(), options.n_star);

  K1Presentation empty;
  empty.trunc_n = options.trunc_n;
  empty.n_star = options.n_star;
  K1Presentation prev = decode(out.approx.chain.front(), options.n_star);
  out.over_minimal = presentation_free_witness(empty, prev, {});
  for (std::size_t i = 1; i < out.approx.chain.size(); ++i) {
    K1Presentation next = decode(out.approx.chain[i], options.n_star);
    const auto p2 = identity_p2(prev);
    out.over_minimal =
        compose_presentation_witnesses(out.over_minimal, presentation_free_witness(prev, next, p2), identity_p2(next));
    prev = std::move(next);
  }
  const Report free = check_presentation_free_extension(empty, out.top, {}, {}, out.over_minimal);
  out.report.add("generic.free_over_minimal", free.passed(), free.passed() ? "" : "composed witness fails",
                 nlohmann::json(free.failed_ids()));

  if (auto c = out.approx.saturated_core()) {
    const auto& u = out.approx.chain[*c].universe();
    out.core = std::set<ElemId>(u.begin(), u.end());
  }
  if (out.core.empty()) {
    out.report.add("generic.defect", false, "no chain member has all of its tasks realized");
  } else {
    out.defects = richness_defect(out.approx.last(), k, options.bound, out.core);
    out.report.add("generic.defect", out.defects.empty(),
                   out.defects.empty() ? "" : std::to_string(out.defects.size()) + " unrealized tasks");
  }

  NonoiseOptions nonoise;
  nonoise.floor = options.bound > 1 ? options.bound - 1 : 1;
  std::set<ElemId> core_p2;
  for (ElemId c : out.top.p2)
    if (out.core.contains(c)) core_p2.insert(c);
  nonoise.core_p2 = core_p2;
  out.report.merge(nonoise_check(out.top, nonoise));
  return out;
}

void to_json(nlohmann::json& j, const K1Generic& g) {
  nlohmann::json defects = nlohmann::json::array();
  for (const auto& d : g.defects) defects.push_back({{"pair", d.pair}, {"f", d.f}});
  j = {{"approximation", g.approx},
       {"top", g.top},
       {"over_minimal", g.over_minimal},
       {"core", g.core},
       {"defects", defects},
       {"report", g.report}};
}

}  // namespace fraisse
