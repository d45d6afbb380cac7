#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace evego {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using MatX6 = Eigen::Matrix<double, Eigen::Dynamic, 6>;

// Objectives are scaled by this factor inside the Gram constructions so the
// smallest eigenvalues stay clear of optimizer termination thresholds.
inline constexpr double kGramScale = 1e6;

enum class ErrorCode {
  DegenerateLine,
  DegenerateFlow,
  InsufficientEvents,
  DegenerateEigenvalue,
  AmbiguousDirection,
  RankDeficient,
  PureRotationDetected,
  DegenerateConfiguration,
  UndefinedMetric,
  EmptyInput,
  NoConsensus,
  RejectionExhausted,
  BehindCamera,
  DegenerateProjection,
  IoError,
  ConfigParseError,
};

const char* error_name(ErrorCode code);

// Every error class maps to a distinct nonzero process exit code (see README).
int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Event {
  double x = 0.0;  // normalized image abscissa
  double y = 0.0;  // normalized image ordinate
  double tau = 0.0;  // absolute timestamp [s]
  int polarity = 1;  // carried through, never used in computation
};

// Events of one 3D line over the interval [tau_s - half_window, tau_s + half_window].
// rel_times[j] = events[j].tau - tau_s. Optional per-event weights, ground-truth
// normal flow directions, and outlier flags travel with the cluster; empty
// vectors mean "not present".
struct EventCluster {
  std::vector<Event> events;
  double tau_s = 0.0;
  double half_window = 0.0;
  std::vector<double> rel_times;
  std::vector<double> weights;
  std::vector<Vec2> flows;
  std::vector<std::uint8_t> outlier_flags;

  std::size_t size() const noexcept { return events.size(); }
  double weight(std::size_t j) const { return weights.empty() ? 1.0 : weights[j]; }
  bool has_flow() const noexcept { return !flows.empty(); }
};

struct MotionState {
  Vec3 omega = Vec3::Zero();  // [rad/s]
  Vec3 v = Vec3::Zero();      // [m/s]
};

// Direction of the linear velocity; the magnitude is unobservable.
struct LinearVelocity {
  Vec3 v_dir = Vec3::Zero();
  bool known_up_to_scale = true;
  bool sign_resolved = false;
};

struct PluckerLine {
  Vec3 d = Vec3::UnitX();  // unit direction
  Vec3 m = Vec3::Zero();   // moment, d.dot(m) == 0
};

// Orthonormal line-dependent frame: e1 = d, e3 = -P (P the unit-normalized
// closest point of the line to the origin), e2 = e3 x e1.
struct LineFrame {
  Vec3 e1, e2, e3;
  Vec3 theta;  // axis-angle of [e1 e2 e3]
};

// Flips v so its component of largest magnitude (first such index on ties)
// is positive. Deterministic sign convention shared by normals, directions
// and eigenvectors.
Vec3 canonical_sign(const Vec3& v);
Vec6 canonical_sign(const Vec6& v);

}  // namespace evego
