#pragma once

#include <array>

#include "evego/types.hpp"

namespace evego {

enum class Parametrization {
  Exact,       // Rodrigues exponential map
  FirstOrder,  // I + [t*omega]x, not orthogonal in general
  Cascade,     // first-order initialization refined with the exact map
};

const char* parametrization_name(Parametrization p);

inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return s;
}

// exp([t*omega]x) via the Rodrigues formula. Angles below 1e-9 fall back to
// the first-order matrix; the two agree to machine precision there.
Mat3 rotation_exact(const Vec3& omega, double t);

// I + [t*omega]x.
Mat3 rotation_first_order(const Vec3& omega, double t);

// Dispatch on parametrization (Exact or FirstOrder; Cascade is a solver-level
// strategy and is not a per-event rotation model).
Mat3 rotation_at(const Vec3& omega, double t, Parametrization p);

// d/d(omega_k) of exp([t*omega]x) for k = 0,1,2 (exact map).
std::array<Mat3, 3> rotation_exact_jacobian(const Vec3& omega, double t);

}  // namespace evego
