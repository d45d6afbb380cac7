#pragma once

#include <array>
#include <vector>

#include "evego/types.hpp"

namespace evego {

// Under the first-order rotation, every entry of M(omega) / N(omega) is an
// exact quadratic polynomial in omega. The event sums are folded once into
// one symmetric coefficient matrix per monomial, making each evaluation
// independent of the event count.
//
// Monomial basis, fixed order:
//   {1, wx, wy, wz, wx^2, wy^2, wz^2, wx*wy, wx*wz, wy*wz}
inline constexpr int kMonomialCount = 10;

template <int Dim>
struct QuadraticGram {
  using Mat = Eigen::Matrix<double, Dim, Dim>;

  std::array<Mat, kMonomialCount> coeff{};

  QuadraticGram() { coeff.fill(Mat::Zero()); }

  Mat evaluate(const Vec3& w) const {
    Mat m = coeff[0];
    for (int k = 0; k < 3; ++k) m += w[k] * coeff[1 + k];
    for (int k = 0; k < 3; ++k) m += w[k] * w[k] * coeff[4 + k];
    m += w[0] * w[1] * coeff[7];
    m += w[0] * w[2] * coeff[8];
    m += w[1] * w[2] * coeff[9];
    return m;
  }

  // d/d w_k of evaluate(w).
  Mat derivative(const Vec3& w, int k) const {
    Mat m = coeff[1 + k] + 2.0 * w[k] * coeff[4 + k];
    switch (k) {
      case 0:
        m += w[1] * coeff[7] + w[2] * coeff[8];
        break;
      case 1:
        m += w[0] * coeff[7] + w[2] * coeff[9];
        break;
      default:
        m += w[0] * coeff[8] + w[1] * coeff[9];
        break;
    }
    return m;
  }
};

using QuadraticGram6 = QuadraticGram<6>;
using QuadraticGram3 = QuadraticGram<3>;

// Compressed moments of the incidence Gram: evaluate(w) == gram_M(build_incidence(...,
// FirstOrder)) to rounding error.
QuadraticGram6 compress_incidence(const EventCluster& cluster);

// Compressed moments of sum_j w_j (R_j x_j)(R_j x_j)^T under the first-order
// rotation, for plane normals (coplanarity) or bearings (pure-rotation minor).
QuadraticGram3 compress_outer_sum(const std::vector<Vec3>& vectors,
                                  const std::vector<double>& rel_times,
                                  const std::vector<double>& weights);

}  // namespace evego
