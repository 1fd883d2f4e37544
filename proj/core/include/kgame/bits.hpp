#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgame {

// A finite binary string. Stored as '0'/'1' characters so it can key maps
// and print without conversion. The empty string is a valid value.
class BitString {
 public:
  BitString() = default;

  // Throws std::invalid_argument on any character other than '0' or '1'.
  static BitString parse(std::string_view text);

  // Fixed-width big-endian encoding of value; length must be <= 64.
  static BitString from_value(uint64_t value, int length);

  // Canonical integer encoding: big-endian, no leading zeros, 0 -> "".
  static BitString from_integer(uint64_t value);

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](size_t i) const { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }
  void append(std::string_view raw) { bits_ += raw; }
  void invert();

  const std::string& str() const { return bits_; }

  // Big-endian value (column index of the string); nullopt past 64 bits.
  std::optional<uint64_t> value() const;

  // Inverse of from_integer; nullopt when the string has a leading zero
  // or does not fit in 64 bits.
  std::optional<uint64_t> as_integer() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  explicit BitString(std::string bits) : bits_(std::move(bits)) {}
  std::string bits_;
};

// Length first, then lexicographic.
bool shortlex_less(const BitString& a, const BitString& b);

// All 2^length strings of the given length in increasing value order.
std::vector<BitString> all_strings(int length);

// All strings of length lo..hi inclusive, shortlex order.
std::vector<BitString> all_strings(int lo, int hi);

// Number of bits of the canonical integer encoding of value (0 for 0).
int bit_length(uint64_t value);

// floor(log2(value)) for value >= 1.
int floor_log2(uint64_t value);

}  // namespace kgame

template <>
struct std::hash<kgame::BitString> {
  size_t operator()(const kgame::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
