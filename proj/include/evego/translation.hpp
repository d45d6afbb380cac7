#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evego/adam.hpp"
#include "evego/objective.hpp"
#include "evego/types.hpp"

namespace evego {

// Per-line translation estimate. Due to the aperture problem only the
// component of v perpendicular to the line direction is observable; v_perp
// and m share one positive scale after normalization.
struct PartialVelocity {
  Vec3 d = Vec3::UnitX();       // unit line direction, canonical sign
  Vec3 v_perp = Vec3::Zero();   // unit, perpendicular to d, sign resolved
  Vec3 m = Vec3::Zero();        // line moment, jointly scaled with v_perp
  double weight = 0.0;          // pre-normalization magnitude of v_perp
};

struct PureRotationVerdict {
  bool is_pure = false;
  double rank_ratio = 0.0;  // sigma3 / sigma2 of the 3xN bearing matrix
  std::optional<Vec3> e2_estimate;
};

// Unit eigenvector of the smallest eigenvalue of N, canonical sign. Throws
// AmbiguousDirection when the two smallest eigenvalues coincide (relative
// gap below 1e-12).
Vec3 line_direction(const Mat3& gram_n);

// Linear N-point translation solver from the coplanarity constraint rows
// [t (f' x d)^T, f'^T] [v; m] = 0, solved in the 5-dimensional basis that
// excludes the unobservable alpha*d family. The sign is resolved by the
// positive-depth test. Throws InsufficientEvents (N < 5) and RankDeficient
// (pure rotation or degenerate cluster).
PartialVelocity coplanarity_translation(const EventCluster& cluster, const Vec3& omega,
                                        const Vec3& d,
                                        Parametrization p = Parametrization::Exact);

// Recovers the line frame and partial velocity from the null vector
// x = [u_z e2 - u_y e3; e2] of the incidence matrix. The frame sign is fixed
// by requiring the mean bearing to point toward the line's closest point.
// Throws PureRotationDetected when rank(A) = 4 and InsufficientEvents (N < 5).
PartialVelocity incidence_translation(const EventCluster& cluster, const Vec3& omega,
                                      Parametrization p = Parametrization::Exact);

// Full velocity direction from >= 2 partials: unit null vector of
// sum_i c_i c_i^T with c_i = d_i x v_perp_i, sign by majority vote of
// v^T v_perp_i. Throws DegenerateConfiguration when all directions are
// parallel within 1e-6 rad. residual_out receives max_i |v^T c_i|.
LinearVelocity velocity_average(const std::vector<PartialVelocity>& partials,
                                double* residual_out = nullptr);

// Rank test of the 3xN body-frame bearing matrix (pure rotation makes it
// rank 2); when pure, e2_estimate is the left singular vector of sigma3.
PureRotationVerdict detect_pure_rotation(const EventCluster& cluster, const Vec3& omega,
                                         double tau_rank = 1e-4,
                                         Parametrization p = Parametrization::Exact);

struct FullSolveConfig {
  ObjectiveSpec objective;  // formulation must be Incidence or Coplanarity
  AdamConfig adam;
  double tau_rank = 1e-4;
};

struct EgomotionEstimate {
  SolveReport rotation;
  bool pure_rotation = false;  // all clusters pure: v = 0
  bool velocity_valid = false;
  LinearVelocity velocity;
  double velocity_residual = 0.0;
  std::vector<PureRotationVerdict> verdicts;      // one per input cluster
  std::vector<PartialVelocity> partials;          // for clusters that produced one
  std::vector<int> partial_cluster_ids;
  std::string velocity_note;  // why velocity is unavailable, empty otherwise
};

// Rotation solve, per-cluster pure-rotation detection, then either the v = 0
// verdict (re-solving omega on the reduced objective) or per-line translation
// and velocity averaging. Degenerate clusters are excluded rather than
// aborting the solve.
EgomotionEstimate solve_full(const std::vector<EventCluster>& clusters,
                             const FullSolveConfig& config);

}  // namespace evego
