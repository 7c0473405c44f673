#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace psqm {

/// Classical bit string x = x_1 x_2 ... x_w.
///
/// Position 0 is the leftmost character of the textual form. When a string is
/// read as an integer (basis-state index, enumeration index) it is big-endian:
/// position 0 is the most significant bit. When it is read as a field element
/// it is the coefficient vector, position 0 being the constant term.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t width) : bits_(width, 0) {}

  static BitString from_string(std::string_view text);
  static BitString from_index(std::uint64_t value, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int value) { bits_[i] = static_cast<std::uint8_t>(value & 1); }

  std::uint64_t to_index() const;
  std::string to_string() const;
  int weight() const;
  int parity() const { return weight() & 1; }

  BitString slice(std::size_t offset, std::size_t width) const;
  BitString concat(const BitString& tail) const;

  friend BitString operator^(const BitString& a, const BitString& b);
  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming_distance(const BitString& a, const BitString& b);

/// One classical input per party.
using InputTuple = std::vector<BitString>;

/// Parses "00,01,11" into an input tuple.
InputTuple parse_inputs(std::string_view comma_separated);
std::string format_inputs(const InputTuple& inputs);

}  // namespace psqm
