#include "psqm/bits.hpp"

#include <stdexcept>

namespace psqm {

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(text));
    }
    out.bits_[i] = static_cast<std::uint8_t>(text[i] - '0');
  }
  return out;
}

BitString BitString::from_index(std::uint64_t value, std::size_t width) {
  if (width > 64) {
    throw std::invalid_argument("bit string index width above 64");
  }
  if (width < 64 && (value >> width) != 0) {
    throw std::invalid_argument("index does not fit in the requested width");
  }
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits_[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1U);
  }
  return out;
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 64) {
    throw std::out_of_range("bit string too wide for an integer index");
  }
  std::uint64_t value = 0;
  for (auto b : bits_) {
    value = (value << 1) | b;
  }
  return value;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    s[i] = static_cast<char>('0' + bits_[i]);
  }
  return s;
}

int BitString::weight() const {
  int w = 0;
  for (auto b : bits_) {
    w += b;
  }
  return w;
}

BitString BitString::slice(std::size_t offset, std::size_t width) const {
  if (offset + width > bits_.size()) {
    throw std::out_of_range("bit string slice out of range");
  }
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits_[i] = bits_[offset + i];
  }
  return out;
}

BitString BitString::concat(const BitString& tail) const {
  BitString out = *this;
  out.bits_.insert(out.bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return out;
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("xor of bit strings with different widths");
  }
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.bits_[i] = a.bits_[i] ^ b.bits_[i];
  }
  return out;
}

int hamming_distance(const BitString& a, const BitString& b) { return (a ^ b).weight(); }

InputTuple parse_inputs(std::string_view comma_separated) {
  InputTuple out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    auto end = comma_separated.find(',', start);
    if (end == std::string_view::npos) {
      end = comma_separated.size();
    }
    out.push_back(BitString::from_string(comma_separated.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::string format_inputs(const InputTuple& inputs) {
  std::string s;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i != 0) {
      s += ',';
    }
    s += inputs[i].to_string();
  }
  return s;
}

}  // namespace psqm
