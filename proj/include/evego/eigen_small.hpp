#pragma once

#include "evego/types.hpp"

namespace evego {

struct EigenPair3 {
  double value = 0.0;
  Vec3 vector = Vec3::Zero();
};

struct EigenPair6 {
  double value = 0.0;
  Vec6 vector = Vec6::Zero();
};

// Eigenvalues of a symmetric 3x3 matrix in ascending order, computed with the
// closed-form characteristic-cubic method.
Vec3 sym3_eigenvalues(const Mat3& a);

// Smallest eigenvalue only (cheapest path, used in objective inner loops).
double sym3_smallest_eigenvalue(const Mat3& a);

// Smallest eigenpair. The eigenvector is obtained from row cross products of
// (A - lambda I); near-repeated eigenvalues fall back to an iterative solve.
// The returned vector is unit length with canonical sign.
EigenPair3 smallest_eigenpair(const Mat3& a);

// 6x6 path: iterative symmetric eigensolver.
double sym6_smallest_eigenvalue(const Mat6& a);
EigenPair6 smallest_eigenpair(const Mat6& a);

}  // namespace evego
