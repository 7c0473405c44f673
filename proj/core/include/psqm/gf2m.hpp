#pragma once

#include <cstdint>
#include <string>

#include "psqm/bits.hpp"

namespace psqm::gf2m {

inline constexpr int kMaxDegree = 32;

/// Polynomial over F_2 encoded as an integer: bit i is the coefficient of a^i.
using PolyBits = std::uint64_t;

int poly_degree(PolyBits p);
/// Remainder of a divided by b over F_2 (b nonzero).
PolyBits poly_mod(PolyBits a, PolyBits b);
/// Carry-less product; the caller guarantees deg(a) + deg(b) < 64.
PolyBits poly_mul(PolyBits a, PolyBits b);
/// Trial division by every polynomial of degree 1 .. floor(deg/2).
bool is_irreducible(PolyBits p);

/// Monic irreducible polynomial q_m defining GF(2^m).
class Modulus {
 public:
  /// Validates degree range and irreducibility.
  explicit Modulus(PolyBits encoding);

  int degree() const { return degree_; }
  PolyBits encoding() const { return encoding_; }
  std::string to_string() const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  PolyBits encoding_;
  int degree_;
};

/// Smallest-encoding monic irreducible polynomial of degree m.
Modulus find_irreducible(int m);

/// Element of GF(2^m) in the polynomial basis 1, a, ..., a^{m-1}.
class FieldElement {
 public:
  FieldElement(PolyBits coefficients, const Modulus& modulus);

  static FieldElement zero(const Modulus& modulus) { return {0, modulus}; }
  static FieldElement one(const Modulus& modulus) { return {1, modulus}; }
  /// x_1 x_2 ... x_m  ->  x_1 + x_2 a + ... + x_m a^{m-1}.
  static FieldElement from_bits(const BitString& bits, const Modulus& modulus);

  PolyBits coefficients() const { return coefficients_; }
  const Modulus& modulus() const { return modulus_; }
  bool is_zero() const { return coefficients_ == 0; }
  BitString to_bits() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  PolyBits coefficients_;
  Modulus modulus_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

}  // namespace psqm::gf2m
