#include "depdetect/ec.hpp"

namespace depdetect {

CurveQ::CurveQ(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
  disc_ = -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_);
  if (disc_ == 0)
    throw SingularCurve("curve y^2 = x^3 + " + a_.get_str() + "x + " +
                        b_.get_str() + " is singular");
}

bool CurveQ::contains(const PointQ& P) const {
  if (P.infinity) return true;
  return P.y * P.y == P.x * P.x * P.x + a_ * P.x + b_;
}

PointQ CurveQ::add(const PointQ& P, const PointQ& Q) const {
  if (!contains(P) || !contains(Q))
    throw PointNotOnCurve("ec add: input point not on curve");
  return add_unchecked(P, Q);
}

PointQ CurveQ::add_unchecked(const PointQ& P, const PointQ& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  Rat lambda;
  if (P.x == Q.x) {
    if (P.y == -Q.y) return PointQ::at_infinity();  // includes y = 0 doubling
    lambda = (3 * P.x * P.x + a_) / (2 * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  Rat x3 = lambda * lambda - P.x - Q.x;
  Rat y3 = lambda * (P.x - x3) - P.y;
  return PointQ::affine(std::move(x3), std::move(y3));
}

PointQ CurveQ::neg(const PointQ& P) const {
  if (P.infinity) return P;
  return PointQ::affine(P.x, -P.y);
}

PointQ CurveQ::sub(const PointQ& P, const PointQ& Q) const {
  return add(P, neg(Q));
}

PointQ CurveQ::mul(const Int& n, const PointQ& P) const {
  if (!contains(P)) throw PointNotOnCurve("ec mul: input point not on curve");
  Int k = n;
  PointQ base = P;
  if (k < 0) {
    k = -k;
    base = neg(base);
  }
  PointQ acc = PointQ::at_infinity();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add_unchecked(acc, base);
    k >>= 1;
    if (k > 0) base = add_unchecked(base, base);
  }
  return acc;
}

TorsionInfo CurveQ::torsion_info(const PointQ& P) const {
  if (!contains(P)) throw PointNotOnCurve("torsion test: point not on curve");
  if (P.infinity) return {true, 1};
  PointQ acc = P;
  for (unsigned n = 2; n <= 12; ++n) {
    acc = add_unchecked(acc, P);
    if (acc.infinity) return {true, n};
  }
  return {false, 0};
}

PointQ linear_combination(const CurveQ& E, const std::vector<PointQ>& points,
                          const std::vector<Int>& n) {
  if (points.size() != n.size())
    throw DimensionMismatch("linear_combination: size mismatch");
  PointQ acc = PointQ::at_infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    acc = E.add(acc, E.mul(n[i], points[i]));
  return acc;
}

}  // namespace depdetect
