#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "depdetect/basics.hpp"

namespace depdetect {

// Eratosthenes up to n inclusive. Results for the largest bound seen so far are
// cached process-wide (scans ask for the same bound over and over).
std::vector<unsigned long> primes_up_to(unsigned long n);

// Deterministic for n < 3.3e14 (Miller-Rabin, bases 2..17); extra bases beyond
// that give a comfortable margin for anything desk scale throws at it.
bool is_prime(const Int& n);

// Prime factorization (p, multiplicity), p ascending. Trial division by primes
// up to 10^6; a surviving cofactor must itself be prime or we refuse.
std::vector<std::pair<Int, int>> factorize(const Int& n);

// x = r1 (mod m1), x = r2 (mod m2); moduli need not be coprime.
// Returns (residue, lcm) or nothing when the congruences conflict.
std::optional<std::pair<Int, Int>> crt_pair(const Int& r1, const Int& m1,
                                            const Int& r2, const Int& m2);

// Largest e with q^e | n (n != 0, q >= 2).
int valuation(const Int& n, const Int& q);

// Euclidean-style representative in [0, m).
Int mod_floor(const Int& a, const Int& m);

// Representative of a mod m in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m);

}  // namespace depdetect
