#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "depdetect/basics.hpp"
#include "depdetect/ec.hpp"
#include "depdetect/instance.hpp"

namespace depdetect {

// Canonical height with the tolerance the doubling limit actually reached.
// value = 0 exactly (tolerance 0) iff the point is torsion.
struct HeightValue {
  double value = 0.0;
  double tolerance = 0.0;
};

// h_hat(P) = lim h(x(2^n P)) / (2 * 4^n), h = log max(|num|, |den|).
// Stops once successive estimates differ by < tol (from the fourth doubling
// on -- early estimates can agree by accident); ConvergenceFailure after 64
// doublings. Torsion inputs short-circuit to exact 0.
HeightValue canonical_height(const CurveQ& E, const PointQ& P, double tol);

// <P, Q> = (h_hat(P+Q) - h_hat(P) - h_hat(Q)) / 2.
double height_pairing(const CurveQ& E, const PointQ& P, const PointQ& Q,
                      double tol);

// Symmetric matrix of pairings <P_i, P_j>.
struct GramMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit GramMatrix(std::size_t size = 0) : n(size), data(size * size) {}
  double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

GramMatrix gram_matrix(const CurveQ& E, const std::vector<PointQ>& basis,
                       double tol);

// Exhaustive search over |n_i| <= box with exact verification.
std::optional<std::vector<Int>> box_search(const Instance& inst, long box);

// Solves Gram * n = (<candidate, P_i>)_i in doubles, rounds (within 0.26 of
// an integer), and accepts only on exact verification candidate = sum n_i P_i
// over Q; falls back to box_search when the solve/rounding/verification
// fails. SingularGram when the Gram condition estimate exceeds 10^8.
std::optional<std::vector<Int>> recover_coefficients(const Instance& inst,
                                                     double tol, long box);

}  // namespace depdetect
