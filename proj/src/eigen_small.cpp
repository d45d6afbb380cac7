#include "evego/eigen_small.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace evego {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Scale-relative threshold below which the cross-product eigenvector
// construction is considered degenerate (repeated eigenvalue).
constexpr double kVectorDegeneracy = 1e-12;

}  // namespace

Vec3 sym3_eigenvalues(const Mat3& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  if (p1 == 0.0) {
    Vec3 e(a(0, 0), a(1, 1), a(2, 2));
    std::sort(e.data(), e.data() + 3);
    return e;
  }
  const double q = a.trace() / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Mat3 b = (a - q * Mat3::Identity()) / p;
  double r = b.determinant() / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e_max = q + 2.0 * p * std::cos(phi);
  const double e_min = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  return Vec3(e_min, 3.0 * q - e_min - e_max, e_max);
}

double sym3_smallest_eigenvalue(const Mat3& a) {
  return sym3_eigenvalues(a)[0];
}

EigenPair3 smallest_eigenpair(const Mat3& a) {
  const Vec3 evals = sym3_eigenvalues(a);
  const double lambda = evals[0];
  const Mat3 shifted = a - lambda * Mat3::Identity();

  // Null vector of (A - lambda I) from the largest row cross product.
  const Vec3 r0 = shifted.row(0);
  const Vec3 r1 = shifted.row(1);
  const Vec3 r2 = shifted.row(2);
  Vec3 best = r0.cross(r1);
  double best_norm = best.squaredNorm();
  const Vec3 c02 = r0.cross(r2);
  if (c02.squaredNorm() > best_norm) {
    best = c02;
    best_norm = c02.squaredNorm();
  }
  const Vec3 c12 = r1.cross(r2);
  if (c12.squaredNorm() > best_norm) {
    best = c12;
    best_norm = c12.squaredNorm();
  }

  const double scale = a.cwiseAbs().maxCoeff();
  if (best_norm > kVectorDegeneracy * kVectorDegeneracy * scale * scale) {
    EigenPair3 out;
    out.value = lambda;
    out.vector = canonical_sign(Vec3(best / std::sqrt(best_norm)));
    return out;
  }

  // Repeated or near-repeated smallest eigenvalue: any unit vector of the
  // eigenspace is valid; take it from the iterative solver.
  Eigen::SelfAdjointEigenSolver<Mat3> es(a);
  EigenPair3 out;
  out.value = es.eigenvalues()[0];
  out.vector = canonical_sign(Vec3(es.eigenvectors().col(0)));
  return out;
}

double sym6_smallest_eigenvalue(const Mat6& a) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

EigenPair6 smallest_eigenpair(const Mat6& a) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(a);
  EigenPair6 out;
  out.value = es.eigenvalues()[0];
  out.vector = canonical_sign(Vec6(es.eigenvectors().col(0)));
  return out;
}

}  // namespace evego
