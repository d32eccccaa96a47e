#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rmc {

// Dense bitset over the states 0..n-1 of one structure.  All binary
// operations require both operands to range over the same universe.
// Unused bits of the last word are kept zero.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe);

  static StateSet full(std::size_t universe);

  std::size_t universe_size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool empty() const;
  std::size_t count() const;

  // Subset and overlap tests against another set over the same universe.
  bool contains(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);
  StateSet& operator-=(const StateSet& other);
  StateSet complement() const;

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator!=(const StateSet& a, const StateSet& b) {
    return !(a == b);
  }

  std::vector<std::size_t> elements() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        fn(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

 private:
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rmc
