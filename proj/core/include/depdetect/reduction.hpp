#pragma once

#include <optional>
#include <string>

#include "depdetect/basics.hpp"
#include "depdetect/ec.hpp"
#include "depdetect/ff.hpp"

namespace depdetect {

struct PointFp {
  bool infinity = true;
  FFElement x, y;

  static PointFp at_infinity() { return PointFp{}; }
  static PointFp affine(FFElement px, FFElement py) {
    PointFp P;
    P.infinity = false;
    P.x = std::move(px);
    P.y = std::move(py);
    return P;
  }

  friend bool operator==(const PointFp& P, const PointFp& Q) {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x == Q.x && P.y == Q.y;
  }
  friend bool operator!=(const PointFp& P, const PointFp& Q) { return !(P == Q); }
};

// y^2 = x^3 + ax + b over F_p, p an odd prime, nonsingular.
class CurveFp {
 public:
  CurveFp(PrimeField F, Int a, Int b);

  const PrimeField& field() const { return F_; }
  const Int& p() const { return F_.p(); }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }

  bool contains(const PointFp& P) const;
  PointFp add(const PointFp& P, const PointFp& Q) const;
  PointFp neg(const PointFp& P) const;
  PointFp sub(const PointFp& P, const PointFp& Q) const;
  PointFp mul(const Int& n, const PointFp& P) const;

 private:
  PrimeField F_;
  Int a_, b_;
};

// E(F_p) = Z/n1 x Z/n2 with n1 | n2, n1 | p-1, n1*n2 = N; G1, G2 generate the
// factors (G1 = infinity when n1 = 1).
struct GroupStructureFp {
  Int N, n1, n2;
  PointFp G1, G2;
};

// BadReduction when p | 2*disc (conservative good-reduction test).
CurveFp reduce_curve(const CurveQ& E, const Int& p);

// The reduction map E(Q) -> E(F_p). Writes x = u/e^2, y = w/e^3 in lowest
// terms; points with p | e lie in the kernel and map to Infinity.
PointFp reduce_point(const CurveQ& E, const PointQ& P, const CurveFp& Ep);

// #E(F_p) by full enumeration of x, via a quadratic-residue table.
// UnsupportedScale above p = 10^6 (point counting is O(p) by design).
Int count_points(const CurveFp& E);

// Exact order of P given the group order N (factor-stripping).
Int point_order(const CurveFp& E, const PointFp& P, const Int& N);

// Certified structure: finds G2 of maximal order n2 by random sampling
// (deterministically seeded with p), then an independent G1 of order n1 = N/n2.
// The return value always satisfies every invariant above; the certification
// needs no pairing: |<G1> + <G2>| = n1*n2 = N forces the direct sum.
GroupStructureFp group_structure(const CurveFp& E);

// Re-validation used by the cache and the tests: nullopt when `S` passes all
// structure invariants for E, else a description of the first violation.
std::optional<std::string> structure_problem(const CurveFp& E,
                                             const GroupStructureFp& S);

}  // namespace depdetect
