#pragma once

#include <vector>

#include "depdetect/basics.hpp"

namespace depdetect {

// Element of F_p, always the reduced representative in [0, p).
using FFElement = Int;

class PrimeField {
 public:
  // Validates primality (deterministic at our scale); NotPrime otherwise.
  explicit PrimeField(Int p);

  const Int& p() const { return p_; }

  FFElement reduce(const Int& a) const;

  FFElement add(const FFElement& a, const FFElement& b) const;
  FFElement sub(const FFElement& a, const FFElement& b) const;
  FFElement mul(const FFElement& a, const FFElement& b) const;
  FFElement neg(const FFElement& a) const;

  // ZeroInverse on a = 0.
  FFElement inv(const FFElement& a) const;

  // Exponent may be negative (inverts the base first).
  FFElement pow(const FFElement& base, const Int& e) const;

  // Legendre symbol in {-1, 0, 1}; EvenCharacteristic for p = 2.
  int legendre(const FFElement& a) const;

  // Square roots of a: {} when a is a non-residue, {0} when a = 0, else the
  // two roots ascending. Tonelli-Shanks, with the p = 3 (mod 4) shortcut.
  // EvenCharacteristic for p = 2.
  std::vector<FFElement> sqrt(const FFElement& a) const;

 private:
  Int p_;
};

}  // namespace depdetect
