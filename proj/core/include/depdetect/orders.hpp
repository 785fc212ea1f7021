#pragma once

#include <vector>

#include "depdetect/basics.hpp"
#include "depdetect/ec.hpp"
#include "depdetect/reduction.hpp"

namespace depdetect {

// Prescribed l-power orders for the reductions of a set of points.
struct OrderSpec {
  Int l;                     // prime
  std::vector<int> targets;  // exponents m_i, one per point
  long bound = 10000;
};

struct DensityReport {
  std::vector<Int> matching_primes;  // ascending
  long good_primes_tested = 0;
  Rat frequency;  // |matching_primes| / good_primes_tested (0 if none tested)
};

// The exponent e with l^e exactly dividing ord(Q) in E(F_p); 0 for infinity.
int l_part_order(const CurveFp& E, const PointFp& Q, const Int& l);

// Scan good primes <= spec.bound and collect those where the reduction of
// every point has l-part order exactly l^{targets[i]}.
DensityReport find_prescribed_orders(const CurveQ& E,
                                     const std::vector<PointQ>& points,
                                     const OrderSpec& spec);

}  // namespace depdetect
