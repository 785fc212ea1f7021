#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "depdetect/ec.hpp"
#include "depdetect/reduction.hpp"

namespace tst {

using namespace depdetect;

inline PointQ pq(const std::string& x, const std::string& y) {
  return PointQ::affine(Rat(x), Rat(y));
}

inline PointQ pq(long x, long y) { return PointQ::affine(Rat(x), Rat(y)); }

inline std::vector<Int> coeffs(std::initializer_list<long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

// every point of E(F_p), the slow way
inline std::vector<PointFp> all_points(const CurveFp& E) {
  std::vector<PointFp> pts{PointFp::at_infinity()};
  const Int& p = E.p();
  for (Int x = 0; x < p; ++x)
    for (Int y = 0; y < p; ++y) {
      PointFp P = PointFp::affine(x, y);
      if (E.contains(P)) pts.push_back(P);
    }
  return pts;
}

// closure of a generating set under the group law
inline std::vector<PointFp> span_of(const CurveFp& E,
                                    const std::vector<PointFp>& gens) {
  std::vector<PointFp> seen{PointFp::at_infinity()};
  std::vector<PointFp> frontier = seen;
  while (!frontier.empty()) {
    std::vector<PointFp> next;
    for (const PointFp& P : frontier)
      for (const PointFp& G : gens) {
        PointFp Q = E.add(P, G);
        if (std::find(seen.begin(), seen.end(), Q) == seen.end()) {
          seen.push_back(Q);
          next.push_back(Q);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

inline bool in_span(const CurveFp& E, const std::vector<PointFp>& gens,
                    const PointFp& target) {
  std::vector<PointFp> sp = span_of(E, gens);
  return std::find(sp.begin(), sp.end(), target) != sp.end();
}

}  // namespace tst
