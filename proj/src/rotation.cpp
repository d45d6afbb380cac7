#include "evego/rotation.hpp"

#include <cmath>
#include <stdexcept>

namespace evego {

namespace {
constexpr double kSmallAngle = 1e-9;
}

const char* parametrization_name(Parametrization p) {
  switch (p) {
    case Parametrization::Exact: return "exact";
    case Parametrization::FirstOrder: return "approx";
    case Parametrization::Cascade: return "cascade";
  }
  return "unknown";
}

Mat3 rotation_first_order(const Vec3& omega, double t) {
  Mat3 r;
  const Vec3 w = t * omega;
  r << 1.0, -w.z(), w.y(),
       w.z(), 1.0, -w.x(),
      -w.y(), w.x(), 1.0;
  return r;
}

Mat3 rotation_exact(const Vec3& omega, double t) {
  const Vec3 phi = t * omega;
  const double theta = phi.norm();
  if (theta < kSmallAngle) {
    return rotation_first_order(omega, t);
  }
  const Mat3 k = skew(phi);
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Mat3::Identity() + a * k + b * (k * k);
}

Mat3 rotation_at(const Vec3& omega, double t, Parametrization p) {
  switch (p) {
    case Parametrization::Exact: return rotation_exact(omega, t);
    case Parametrization::FirstOrder: return rotation_first_order(omega, t);
    case Parametrization::Cascade: break;
  }
  throw std::invalid_argument("rotation_at: cascade is not a per-event rotation model");
}

std::array<Mat3, 3> rotation_exact_jacobian(const Vec3& omega, double t) {
  std::array<Mat3, 3> jac;
  const Vec3 phi = t * omega;
  const double theta2 = phi.squaredNorm();
  if (theta2 < kSmallAngle * kSmallAngle) {
    for (int k = 0; k < 3; ++k) {
      jac[k] = t * skew(Vec3::Unit(k));
    }
    return jac;
  }
  // d exp([phi]x)/d phi_k = (phi_k [phi]x + [phi x (I - R) e_k]x) / |phi|^2 * R,
  // then d phi/d omega_k = t.
  const Mat3 r = rotation_exact(omega, t);
  const Mat3 i_minus_r = Mat3::Identity() - r;
  for (int k = 0; k < 3; ++k) {
    const Vec3 u = phi.cross(i_minus_r.col(k));
    jac[k] = t / theta2 * (phi[k] * skew(phi) + skew(u)) * r;
  }
  return jac;
}

}  // namespace evego
