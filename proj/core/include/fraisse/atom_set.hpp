#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fraisse {

/// Fixed-width dynamic bitset. In a finite Boolean algebra every element is the
/// set of atoms below it, so this is also the element type of the algebra.
class AtomSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  AtomSet() = default;
  explicit AtomSet(std::size_t width);
  AtomSet(std::size_t width, std::initializer_list<std::size_t> bits);

  static AtomSet full(std::size_t width);
  static AtomSet single(std::size_t width, std::size_t bit);
  static AtomSet from_indices(std::size_t width, const std::vector<std::size_t>& bits);
  /// Low 64 bits from a mask (convenient in tests for small algebras).
  static AtomSet from_mask(std::size_t width, std::uint64_t mask);

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void reset(std::size_t i) { set(i, false); }

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  bool all() const noexcept { return count() == width_; }

  /// First set bit at or after `from`; npos when there is none.
  std::size_t next(std::size_t from = 0) const noexcept;
  std::vector<std::size_t> indices() const;
  std::uint64_t low_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool is_subset_of(const AtomSet& other) const;
  bool intersects(const AtomSet& other) const;

  AtomSet& operator&=(const AtomSet& other);
  AtomSet& operator|=(const AtomSet& other);
  AtomSet& operator^=(const AtomSet& other);
  /// Set difference.
  AtomSet& operator-=(const AtomSet& other);
  AtomSet operator~() const;

  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  friend AtomSet operator^(AtomSet a, const AtomSet& b) { return a ^= b; }
  friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
  friend std::strong_ordering operator<=>(const AtomSet& a, const AtomSet& b);

  /// Copy with a different width: extra bits are cleared, bits beyond the new
  /// width are dropped.
  AtomSet resized(std::size_t width) const;

  /// "<width>:<hex>" with the most significant nibble first.
  std::string to_hex() const;
  static AtomSet from_hex(const std::string& text);

  std::size_t hash() const noexcept;

 private:
  void check_width(const AtomSet& other) const;
  void trim() noexcept;

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AtomSetHash {
  std::size_t operator()(const AtomSet& s) const noexcept { return s.hash(); }
};

}  // namespace fraisse
