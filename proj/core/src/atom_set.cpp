#include "fraisse/atom_set.hpp"

#include <bit>

#include "fraisse/error.hpp"

namespace fraisse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kClosureDiverges: return "ClosureDiverges";
    case ErrorCode::kVocabularyMismatch: return "VocabularyMismatch";
    case ErrorCode::kImproperIdeal: return "ImproperIdeal";
    case ErrorCode::kInvalidEmbedding: return "InvalidEmbedding";
    case ErrorCode::kNotFree: return "NotFree";
    case ErrorCode::kNoBasisThrough: return "NoBasisThrough";
    case ErrorCode::kTrivialElement: return "TrivialElement";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kEnumerationOverflow: return "EnumerationOverflow";
    case ErrorCode::kAmalgamationFailed: return "AmalgamationFailed";
    case ErrorCode::kNotMember: return "NotMember";
    case ErrorCode::kWitnessAlignmentFailed: return "WitnessAlignmentFailed";
    case ErrorCode::kUltrafilterChoiceFailed: return "UltrafilterChoiceFailed";
    case ErrorCode::kCollapseDetected: return "CollapseDetected";
    case ErrorCode::kOverlappingH: return "OverlappingH";
    case ErrorCode::kHarvestFailed: return "HarvestFailed";
    case ErrorCode::kNoAmalgam: return "NoAmalgam";
    case ErrorCode::kFrugalImpossible: return "FrugalImpossible";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
constexpr std::size_t kBits = 64;
std::size_t word_count(std::size_t width) { return (width + kBits - 1) / kBits; }
}  // namespace

AtomSet::AtomSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

AtomSet::AtomSet(std::size_t width, std::initializer_list<std::size_t> bits) : AtomSet(width) {
  for (auto b : bits) set(b);
}

AtomSet AtomSet::full(std::size_t width) {
  AtomSet s(width);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.trim();
  return s;
}

AtomSet AtomSet::single(std::size_t width, std::size_t bit) {
  AtomSet s(width);
  s.set(bit);
  return s;
}

AtomSet AtomSet::from_indices(std::size_t width, const std::vector<std::size_t>& bits) {
  AtomSet s(width);
  for (auto b : bits) s.set(b);
  return s;
}

AtomSet AtomSet::from_mask(std::size_t width, std::uint64_t mask) {
  AtomSet s(width);
  if (!s.words_.empty()) s.words_[0] = mask;
  s.trim();
  return s;
}

bool AtomSet::test(std::size_t i) const {
  if (i >= width_) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  return (words_[i / kBits] >> (i % kBits)) & 1U;
}

void AtomSet::set(std::size_t i, bool value) {
  if (i >= width_) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i % kBits);
  if (value) {
    words_[i / kBits] |= bit;
  } else {
    words_[i / kBits] &= ~bit;
  }
}

std::size_t AtomSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool AtomSet::any() const noexcept {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t AtomSet::next(std::size_t from) const noexcept {
  if (from >= width_) return npos;
  std::size_t wi = from / kBits;
  std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from % kBits));
  while (true) {
    if (w) return wi * kBits + static_cast<std::size_t>(std::countr_zero(w));
    if (++wi >= words_.size()) return npos;
    w = words_[wi];
  }
}

std::vector<std::size_t> AtomSet::indices() const {
  std::vector<std::size_t> out;
  for (auto i = next(0); i != npos; i = next(i + 1)) out.push_back(i);
  return out;
}

void AtomSet::check_width(const AtomSet& other) const {
  if (width_ != other.width_)
    throw Error(ErrorCode::kInvalidArgument,
                "atom set width mismatch (" + std::to_string(width_) + " vs " +
                    std::to_string(other.width_) + ")");
}

bool AtomSet::is_subset_of(const AtomSet& other) const {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool AtomSet::intersects(const AtomSet& other) const {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

AtomSet& AtomSet::operator&=(const AtomSet& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator|=(const AtomSet& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator^=(const AtomSet& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator-=(const AtomSet& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

AtomSet AtomSet::operator~() const {
  AtomSet s(*this);
  for (auto& w : s.words_) w = ~w;
  s.trim();
  return s;
}

std::strong_ordering operator<=>(const AtomSet& a, const AtomSet& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

AtomSet AtomSet::resized(std::size_t width) const {
  AtomSet s(width);
  const std::size_t n = std::min(words_.size(), s.words_.size());
  for (std::size_t i = 0; i < n; ++i) s.words_[i] = words_[i];
  s.trim();
  return s;
}

void AtomSet::trim() noexcept {
  if (words_.empty()) return;
  const std::size_t rem = width_ % kBits;
  if (rem) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::string AtomSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  const std::size_t nibbles = (width_ + 3) / 4;
  for (std::size_t k = nibbles; k-- > 0;) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = k * 4 + b;
      if (i < width_ && test(i)) v |= 1U << b;
    }
    hex.push_back(kDigits[v]);
  }
  return std::to_string(width_) + ":" + hex;
}

AtomSet AtomSet::from_hex(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kParseError, "atom set missing width: " + text);
  std::size_t width = 0;
  try {
    width = std::stoul(text.substr(0, colon));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad atom set width: " + text);
  }
  const std::string hex = text.substr(colon + 1);
  AtomSet s(width);
  const std::size_t n = hex.size();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const char ch = hex[n - 1 - pos];
    unsigned v = 0;
    if (ch >= '0' && ch <= '9') v = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f') v = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F') v = static_cast<unsigned>(ch - 'A' + 10);
    else throw Error(ErrorCode::kParseError, "bad hex digit in atom set: " + text);
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(v >> b & 1U)) continue;
      const std::size_t i = pos * 4 + b;
      if (i >= width) throw Error(ErrorCode::kParseError, "atom set bit beyond width: " + text);
      s.set(i);
    }
  }
  return s;
}

std::size_t AtomSet::hash() const noexcept {
  std::size_t h = width_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace fraisse
