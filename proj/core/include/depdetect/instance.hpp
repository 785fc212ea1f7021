#pragma once

#include <vector>

#include "depdetect/basics.hpp"
#include "depdetect/ec.hpp"

namespace depdetect {

// Problem statement over Q: does candidate lie in the subgroup generated by
// basis inside E(Q)? Basis points must be nontorsion; the candidate must be
// nontorsion or exactly Infinity (which is trivially in every subgroup).
struct Instance {
  CurveQ E;
  std::vector<PointQ> basis;
  PointQ candidate;
};

// Throws InvalidInstance (with the reason) when the invariants above fail.
void validate_instance(const Instance& inst);

}  // namespace depdetect
