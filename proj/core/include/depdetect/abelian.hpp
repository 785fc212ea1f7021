#pragma once

#include <optional>
#include <vector>

#include "depdetect/basics.hpp"
#include "depdetect/reduction.hpp"

namespace depdetect {

// Coordinates of a point w.r.t. a GroupStructureFp: Q = a1*G1 + a2*G2 with
// 0 <= a1 < n1, 0 <= a2 < n2. Unique once G1, G2 are fixed.
struct Coordinates {
  Int a1, a2;
  friend bool operator==(const Coordinates& u, const Coordinates& v) {
    return u.a1 == v.a1 && u.a2 == v.a2;
  }
};

// Dense integer matrix, arbitrary precision. Row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static IntMatrix identity(std::size_t n);
  friend bool operator==(const IntMatrix& A, const IntMatrix& B) {
    return A.rows == B.rows && A.cols == B.cols && A.data == B.data;
  }
};

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);

// Exact determinant (fraction-free elimination); square input.
Int det(const IntMatrix& A);

// Smith normal form D = U * M * V with U, V unimodular and the diagonal
// entries nonnegative, each dividing the next.
struct SnfResult {
  IntMatrix D, U, V;
};
SnfResult snf(const IntMatrix& M);

// Solution of M x = v componentwise mod `moduli` (one modulus per row),
// by lifting to the integer system [M | diag(moduli)] and running snf.
// `x` is a canonical small representative; `kernel` generates the full
// solution lattice of the homogeneous system (projected to x-coordinates),
// entries reduced mod lcm(moduli).
struct CongruenceSolution {
  std::vector<Int> x;
  std::vector<std::vector<Int>> kernel;
};
std::optional<CongruenceSolution> solve_congruence_full(
    const IntMatrix& M, const std::vector<Int>& v,
    const std::vector<Int>& moduli);

std::optional<std::vector<Int>> solve_congruence(const IntMatrix& M,
                                                 const std::vector<Int>& v,
                                                 const std::vector<Int>& moduli);

// Pohlig-Hellman decomposition of Q against the certified structure: one
// two-dimensional baby-step/giant-step per prime power of n2, then CRT.
// The answer is re-verified against Q before returning.
Coordinates decompose(const CurveFp& E, const GroupStructureFp& S,
                      const PointFp& Q);

// Does target lie in the subgroup generated by gens inside Z/n1 x Z/n2?
// The empty generating set spans {0}.
struct MembershipResult {
  std::vector<Int> coeffs;      // least nonnegative, canonicalized small
  bool unique_mod_exponent;     // solution unique mod n2 in every coordinate
};
std::optional<MembershipResult> membership(const Int& n1, const Int& n2,
                                           const std::vector<Coordinates>& gens,
                                           const Coordinates& target);

inline std::optional<MembershipResult> membership(
    const GroupStructureFp& S, const std::vector<Coordinates>& gens,
    const Coordinates& target) {
  return membership(S.n1, S.n2, gens, target);
}

}  // namespace depdetect
