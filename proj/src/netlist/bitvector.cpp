#include "lockeval/netlist/bitvector.hpp"

#include <stdexcept>

namespace lockeval {

BitVector BitVector::from_uint(std::uint64_t value, std::size_t width) {
  BitVector v(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) v.bits_[i] = (value >> i) & 1U;
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bit string must contain only 0/1");
    v.bits_[i] = bits[i] == '1';
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t width) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  BitVector v(width);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    const char ch = *it;
    unsigned digit = 0;
    if (ch >= '0' && ch <= '9') {
      digit = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      digit = static_cast<unsigned>(ch - 'a' + 10);
    } else if (ch >= 'A' && ch <= 'F') {
      digit = static_cast<unsigned>(ch - 'A' + 10);
    } else {
      throw std::invalid_argument("invalid hex digit '" + std::string(1, ch) + "'");
    }
    for (unsigned b = 0; b < 4; ++b, ++bit) {
      const bool value = (digit >> b) & 1U;
      if (bit < width) {
        v.bits_[bit] = value;
      } else if (value) {
        throw std::invalid_argument("hex value wider than " + std::to_string(width) + " bits");
      }
    }
  }
  return v;
}

std::uint64_t BitVector::to_uint() const {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < bits_.size() && i < 64; ++i) {
    if (bits_[i]) value |= std::uint64_t{1} << i;
  }
  return value;
}

std::string BitVector::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits_.size() + 3) / 4;
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned value = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t bit = d * 4 + b;
      if (bit < bits_.size() && bits_[bit]) value |= 1U << b;
    }
    s[digits - 1 - d] = kDigits[value];
  }
  return s;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (bool b : bits_) n += b ? 1 : 0;
  return n;
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
  if (other.width() != width()) throw std::invalid_argument("hamming_distance: width mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) n += bits_[i] != other.bits_[i] ? 1 : 0;
  return n;
}

BitVector BitVector::operator~() const {
  BitVector v(*this);
  v.bits_.flip();
  return v;
}

}  // namespace lockeval
