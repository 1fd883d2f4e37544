#include "kgame/bits.hpp"

#include <bit>
#include <stdexcept>

namespace kgame {

BitString BitString::parse(std::string_view text) {
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
    }
  }
  return BitString(std::string(text));
}

BitString BitString::from_value(uint64_t value, int length) {
  if (length < 0 || length > 64) {
    throw std::invalid_argument("bit string width out of range");
  }
  if (length < 64 && (value >> length) != 0) {
    throw std::invalid_argument("value does not fit in the requested width");
  }
  std::string bits(static_cast<size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if ((value >> (length - 1 - i)) & 1U) bits[static_cast<size_t>(i)] = '1';
  }
  return BitString(std::move(bits));
}

BitString BitString::from_integer(uint64_t value) {
  return from_value(value, bit_length(value));
}

void BitString::invert() {
  for (char& c : bits_) c = (c == '0') ? '1' : '0';
}

std::optional<uint64_t> BitString::value() const {
  if (bits_.size() > 64) return std::nullopt;
  uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | static_cast<uint64_t>(c == '1');
  return v;
}

std::optional<uint64_t> BitString::as_integer() const {
  if (!bits_.empty() && bits_.front() == '0') return std::nullopt;
  return value();
}

bool shortlex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<BitString> all_strings(int length) {
  if (length < 0 || length > 30) {
    throw std::invalid_argument("all_strings: length out of range");
  }
  std::vector<BitString> out;
  out.reserve(size_t{1} << length);
  for (uint64_t v = 0; v < (uint64_t{1} << length); ++v) {
    out.push_back(BitString::from_value(v, length));
  }
  return out;
}

std::vector<BitString> all_strings(int lo, int hi) {
  std::vector<BitString> out;
  for (int len = lo; len <= hi; ++len) {
    auto level = all_strings(len);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

int bit_length(uint64_t value) { return static_cast<int>(std::bit_width(value)); }

int floor_log2(uint64_t value) {
  if (value == 0) throw std::invalid_argument("floor_log2(0)");
  return bit_length(value) - 1;
}

}  // namespace kgame
