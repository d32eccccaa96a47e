#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rmc {

// Truth degree of the five-valued robustness lattice, the chain
//
//   0000 < 0001 < 0011 < 0111 < 1111
//
// A value is four monotone bits b1 <= b2 <= b3 <= b4.  For a path objective
// the bits grade how badly it degrades: b1 = holds outright, b2 = holds from
// some point on, b3 = holds infinitely often, b4 = holds at least once.
// Internally a value is its rank, the number of set bits.
class TruthValue {
 public:
  constexpr TruthValue() = default;

  static constexpr TruthValue bottom() { return TruthValue(0); }
  static constexpr TruthValue top() { return TruthValue(4); }

  // rank in 0..4: number of set bits; 0 is 0000, 4 is 1111.
  static constexpr TruthValue from_rank(int rank) { return TruthValue(rank); }
  constexpr int rank() const { return rank_; }

  // Nonzero values are alternatively indexed by their lowest set bit k in
  // 1..4: level 1 is 1111, level 4 is 0001.  Undefined for 0000.
  static constexpr TruthValue from_level(int k) { return TruthValue(5 - k); }
  constexpr int level() const { return 5 - rank_; }

  // bit(k) for k in 1..4 reading "b1 b2 b3 b4" left to right.
  constexpr bool bit(int k) const { return k > 4 - rank_; }

  // Assembles a value from four bits; rejects non-monotone combinations.
  static std::optional<TruthValue> from_bits(bool b1, bool b2, bool b3,
                                             bool b4);

  std::string to_string() const;
  static std::optional<TruthValue> parse(std::string_view text);

  // All five values in ascending order.
  static const std::array<TruthValue, 5>& all();

  friend constexpr bool operator==(TruthValue a, TruthValue b) {
    return a.rank_ == b.rank_;
  }
  friend constexpr bool operator!=(TruthValue a, TruthValue b) {
    return a.rank_ != b.rank_;
  }
  friend constexpr bool operator<(TruthValue a, TruthValue b) {
    return a.rank_ < b.rank_;
  }
  friend constexpr bool operator<=(TruthValue a, TruthValue b) {
    return a.rank_ <= b.rank_;
  }
  friend constexpr bool operator>(TruthValue a, TruthValue b) {
    return a.rank_ > b.rank_;
  }
  friend constexpr bool operator>=(TruthValue a, TruthValue b) {
    return a.rank_ >= b.rank_;
  }

 private:
  constexpr explicit TruthValue(int rank) : rank_(static_cast<int8_t>(rank)) {}

  int8_t rank_ = 0;
};

constexpr TruthValue meet(TruthValue a, TruthValue b) { return a < b ? a : b; }
constexpr TruthValue join(TruthValue a, TruthValue b) { return a < b ? b : a; }

// Residual of meet: the largest c with meet(c, a) <= b.
constexpr TruthValue implies(TruthValue a, TruthValue b) {
  return a <= b ? TruthValue::top() : b;
}

// Negation quantizes: anything short of full satisfaction is counted as a
// violation, so only 1111 maps to 0000 and every other value maps to 1111.
constexpr TruthValue negate(TruthValue a) {
  return a == TruthValue::top() ? TruthValue::bottom() : TruthValue::top();
}

}  // namespace rmc
