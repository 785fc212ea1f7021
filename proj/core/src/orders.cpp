#include "depdetect/orders.hpp"

#include <optional>
#include <string>

#include "depdetect/numutil.hpp"

namespace depdetect {

int l_part_order(const CurveFp& E, const PointFp& Q, const Int& l) {
  if (!E.contains(Q)) throw PointNotOnCurve("l_part_order: Q not on curve");
  if (Q.infinity) return 0;
  const Int N = count_points(E);
  return valuation(point_order(E, Q, N), l);
}

DensityReport find_prescribed_orders(const CurveQ& E,
                                     const std::vector<PointQ>& points,
                                     const OrderSpec& spec) {
  if (!is_prime(spec.l)) throw InvalidInstance("order spec: l must be prime");
  if (spec.targets.size() != points.size())
    throw InvalidInstance("order spec: one target per point required");
  for (int m : spec.targets)
    if (m < 0) throw InvalidInstance("order spec: negative target");
  if (spec.bound < 3) throw InvalidInstance("order spec: bound must be >= 3");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!E.contains(points[i]))
      throw InvalidInstance("point " + std::to_string(i) + " not on curve");
    if (points[i].infinity || E.torsion_info(points[i]).torsion)
      throw InvalidInstance("point " + std::to_string(i) + " is torsion");
  }

  DensityReport rep;
  rep.frequency = 0;
  for (unsigned long pl : primes_up_to(static_cast<unsigned long>(spec.bound))) {
    const Int p(pl);
    std::optional<CurveFp> Ep;
    try {
      Ep.emplace(reduce_curve(E, p));
    } catch (const BadReduction&) {
      continue;
    }
    ++rep.good_primes_tested;

    const Int N = count_points(*Ep);
    bool all_match = true;
    for (std::size_t i = 0; i < points.size() && all_match; ++i) {
      const PointFp R = reduce_point(E, points[i], *Ep);
      const int e =
          R.infinity ? 0 : valuation(point_order(*Ep, R, N), spec.l);
      if (e != spec.targets[i]) all_match = false;
    }
    if (all_match) rep.matching_primes.push_back(p);
  }
  if (rep.good_primes_tested > 0) {
    rep.frequency = Rat(static_cast<long>(rep.matching_primes.size()),
                        rep.good_primes_tested);
    rep.frequency.canonicalize();
  }
  return rep;
}

}  // namespace depdetect
