#pragma once

#include <optional>
#include <vector>

#include "depdetect/basics.hpp"

namespace depdetect {

// Affine rational point or the point at infinity. Coordinates are canonical
// mpq values (lowest terms, positive denominator) by construction.
struct PointQ {
  bool infinity = true;
  Rat x, y;

  static PointQ at_infinity() { return PointQ{}; }
  static PointQ affine(Rat px, Rat py) {
    PointQ P;
    P.infinity = false;
    P.x = std::move(px);
    P.y = std::move(py);
    return P;
  }

  friend bool operator==(const PointQ& P, const PointQ& Q) {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x == Q.x && P.y == Q.y;
  }
  friend bool operator!=(const PointQ& P, const PointQ& Q) { return !(P == Q); }
};

struct TorsionInfo {
  bool torsion = false;
  unsigned order = 0;  // meaningful only when torsion
};

// y^2 = x^3 + ax + b over Q with integer a, b and nonzero discriminant.
class CurveQ {
 public:
  CurveQ(Int a, Int b);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& disc() const { return disc_; }  // -16(4a^3 + 27b^2)

  bool contains(const PointQ& P) const;

  // Chord-and-tangent group law. PointNotOnCurve when an input is off-curve.
  PointQ add(const PointQ& P, const PointQ& Q) const;
  PointQ neg(const PointQ& P) const;
  PointQ sub(const PointQ& P, const PointQ& Q) const;

  // n may be negative or zero.
  PointQ mul(const Int& n, const PointQ& P) const;

  // Mazur's bound: a rational torsion point has order in {1..10, 12}, so
  // checking that many multiples decides torsion exactly.
  TorsionInfo torsion_info(const PointQ& P) const;

 private:
  PointQ add_unchecked(const PointQ& P, const PointQ& Q) const;

  Int a_, b_, disc_;
};

// sum n_i * P_i (empty sum = infinity). Sizes must agree.
PointQ linear_combination(const CurveQ& E, const std::vector<PointQ>& points,
                          const std::vector<Int>& n);

}  // namespace depdetect
