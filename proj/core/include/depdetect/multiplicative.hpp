#pragma once

#include <map>
#include <optional>
#include <vector>

#include "depdetect/basics.hpp"
#include "depdetect/detector.hpp"

namespace depdetect {

// Multiplicative analogue: is beta in the subgroup of Q^* generated by the
// gammas? Values nonzero, kept in lowest terms.
struct MultInstance {
  std::vector<Rat> gammas;
  Rat beta;
};

// Throws InvalidInstance on zero entries.
void validate_mult_instance(const MultInstance& inst);

// Q^* = Z/2 x (free abelian group on the primes):
// value = (-1)^sign * prod q^{e_q}.
struct ExponentVector {
  int sign = 0;                   // 0 or 1
  std::map<Int, long> exponents;  // prime -> nonzero exponent

  friend bool operator==(const ExponentVector& u, const ExponentVector& v) {
    return u.sign == v.sign && u.exponents == v.exponents;
  }
};

// Trial-division factorization; |num| and den are capped at 10^12
// (FactorizationOverflow beyond -- this mode is a decidable reference model,
// not a factoring engine).
ExponentVector factor_rational(const Rat& x);
Rat unfactor(const ExponentVector& v);

// Membership of beta mod p in the subgroup generated by the gammas mod p:
// discrete logs to the smallest primitive root (Pohlig-Hellman), then one
// congruence row mod p-1. BadPrime when p divides any numerator/denominator.
LocalResult local_check_gm(const MultInstance& inst, const Int& p);

// Exact global membership on exponent vectors (integer linear system via snf
// plus the sign congruence mod 2). Empty = certified non-membership.
std::optional<std::vector<Int>> global_oracle_gm(const MultInstance& inst);

// Same state machine as detector::scan with global_oracle_gm as the closer.
// cache/tol/box fields of the config are ignored here.
Verdict scan_gm(const MultInstance& inst, long bound, const ScanConfig& config);

inline Verdict scan_gm(const MultInstance& inst, long bound) {
  return scan_gm(inst, bound, ScanConfig{});
}

}  // namespace depdetect
