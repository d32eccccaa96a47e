#include "robustmc/state_set.hpp"

#include <cassert>

namespace rmc {

StateSet::StateSet(std::size_t universe)
    : size_(universe), words_((universe + 63) / 64, 0) {}

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.clear_tail();
  return s;
}

void StateSet::clear_tail() {
  if (size_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

bool StateSet::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t StateSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool StateSet::contains(const StateSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (other.words_[i] & ~words_[i]) return false;
  return true;
}

bool StateSet::intersects(const StateSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= ~other.words_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.clear_tail();
  return out;
}

std::vector<std::size_t> StateSet::elements() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace rmc
