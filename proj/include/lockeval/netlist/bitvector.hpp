#ifndef LOCKEVAL_NETLIST_BITVECTOR_HPP
#define LOCKEVAL_NETLIST_BITVECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace lockeval {

/// Fixed-width vector of bits used for input patterns, output patterns and
/// keys. Bit 0 is the first input / first output / key_0.
///
/// Two text forms exist:
///  - bit strings ("0110"), written bit 0 first;
///  - hex strings, where bit i is bit i of the integer value (LSB = bit 0)
///    and digits are written most-significant first, ceil(width/4) digits.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width, bool value = false) : bits_(width, value) {}
  BitVector(std::initializer_list<bool> bits) : bits_(bits) {}

  static BitVector from_uint(std::uint64_t value, std::size_t width);
  static BitVector from_string(std::string_view bits);
  static BitVector from_hex(std::string_view hex, std::size_t width);

  std::size_t width() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool operator[](std::size_t i) const { return bits_[i]; }
  bool at(std::size_t i) const { return bits_.at(i); }
  void set(std::size_t i, bool value) { bits_.at(i) = value; }
  void flip(std::size_t i) { bits_.at(i) = !bits_.at(i); }
  void push_back(bool value) { bits_.push_back(value); }

  /// Low 64 bits as an integer (bit i -> 2^i).
  std::uint64_t to_uint() const;
  std::string to_string() const;
  std::string to_hex() const;

  std::size_t popcount() const;
  std::size_t hamming_distance(const BitVector& other) const;

  BitVector operator~() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<bool> bits_;
};

}  // namespace lockeval

#endif
