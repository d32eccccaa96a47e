#include "robustmc/truth.hpp"

namespace rmc {

std::optional<TruthValue> TruthValue::from_bits(bool b1, bool b2, bool b3,
                                                bool b4) {
  if ((b1 && !b2) || (b2 && !b3) || (b3 && !b4)) return std::nullopt;
  return from_rank(int(b1) + int(b2) + int(b3) + int(b4));
}

std::string TruthValue::to_string() const {
  std::string out(4, '0');
  for (int k = 1; k <= 4; ++k)
    if (bit(k)) out[k - 1] = '1';
  return out;
}

std::optional<TruthValue> TruthValue::parse(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  bool bits[4];
  for (int i = 0; i < 4; ++i) {
    if (text[i] != '0' && text[i] != '1') return std::nullopt;
    bits[i] = text[i] == '1';
  }
  return from_bits(bits[0], bits[1], bits[2], bits[3]);
}

const std::array<TruthValue, 5>& TruthValue::all() {
  static const std::array<TruthValue, 5> values = {
      from_rank(0), from_rank(1), from_rank(2), from_rank(3), from_rank(4)};
  return values;
}

}  // namespace rmc
