#include "psqm/gf2m.hpp"

#include <bit>
#include <stdexcept>

namespace psqm::gf2m {

int poly_degree(PolyBits p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

PolyBits poly_mod(PolyBits a, PolyBits b) {
  if (b == 0) {
    throw std::invalid_argument("polynomial division by zero");
  }
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
    a ^= b << (da - db);
  }
  return a;
}

PolyBits poly_mul(PolyBits a, PolyBits b) {
  PolyBits out = 0;
  while (b != 0) {
    if (b & 1U) {
      out ^= a;
    }
    a <<= 1;
    b >>= 1;
  }
  return out;
}

bool is_irreducible(PolyBits p) {
  const int d = poly_degree(p);
  if (d < 1) {
    return false;
  }
  for (int dd = 1; dd <= d / 2; ++dd) {
    for (PolyBits divisor = PolyBits{1} << dd; divisor < (PolyBits{1} << (dd + 1)); ++divisor) {
      if (poly_mod(p, divisor) == 0) {
        return false;
      }
    }
  }
  return true;
}

Modulus::Modulus(PolyBits encoding) : encoding_(encoding), degree_(poly_degree(encoding)) {
  if (degree_ < 1 || degree_ > kMaxDegree) {
    throw std::invalid_argument("modulus degree must be in [1, 32]");
  }
  if (!is_irreducible(encoding)) {
    throw std::invalid_argument("modulus " + to_string() + " is reducible over F_2");
  }
}

std::string Modulus::to_string() const {
  std::string s;
  for (int i = degree_; i >= 0; --i) {
    if (((encoding_ >> i) & 1U) == 0) {
      continue;
    }
    if (!s.empty()) {
      s += "+";
    }
    if (i == 0) {
      s += "1";
    } else if (i == 1) {
      s += "a";
    } else {
      s += "a^" + std::to_string(i);
    }
  }
  return s;
}

Modulus find_irreducible(int m) {
  if (m < 1 || m > kMaxDegree) {
    throw std::invalid_argument("field degree must be in [1, 32]");
  }
  const PolyBits top = PolyBits{1} << m;
  for (PolyBits low = 0; low < top; ++low) {
    if (is_irreducible(top | low)) {
      return Modulus(top | low);
    }
  }
  // Unreachable: irreducible polynomials exist in every degree.
  throw std::logic_error("no irreducible polynomial found");
}

FieldElement::FieldElement(PolyBits coefficients, const Modulus& modulus)
    : coefficients_(coefficients), modulus_(modulus) {
  if (poly_degree(coefficients) >= modulus.degree()) {
    throw std::invalid_argument("field element has more coefficients than the modulus degree");
  }
}

FieldElement FieldElement::from_bits(const BitString& bits, const Modulus& modulus) {
  if (bits.size() != static_cast<std::size_t>(modulus.degree())) {
    throw std::invalid_argument("bit string width differs from the field degree");
  }
  PolyBits c = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    c |= static_cast<PolyBits>(bits[i]) << i;
  }
  return {c, modulus};
}

BitString FieldElement::to_bits() const {
  BitString out(static_cast<std::size_t>(modulus_.degree()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, static_cast<int>((coefficients_ >> i) & 1U));
  }
  return out;
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!(a.modulus() == b.modulus())) {
    throw std::invalid_argument("field elements belong to different moduli");
  }
}
}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {a.coefficients() ^ b.coefficients(), a.modulus()};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const PolyBits product = poly_mul(a.coefficients(), b.coefficients());
  return {poly_mod(product, a.modulus().encoding()), a.modulus()};
}

}  // namespace psqm::gf2m
