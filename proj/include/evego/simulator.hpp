#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evego/types.hpp"

namespace evego {

struct NormalFlowSample {
  Event event;
  Vec2 g = Vec2::Zero();  // only the direction is consumed
};

struct SimConfig {
  double omega_range = 0.125;  // rad/s, each component uniform in [-r, r]
  double v_range = 5.0;        // m/s, each component uniform in [-r, r]
  double window = 0.5;         // s, full interval width (events in +-window/2)
  Vec3 cube_center = Vec3(0.0, 0.0, 1.0);
  double cube_side = 5.0;           // m
  double line_point_radius = 2.5;   // m, event points within this arc length of the anchor
  double max_line_plane_angle_deg = 60.0;
  double focal_px = 400.0;
  double sigma_pixel = 0.0;         // px, converted to normalized units via focal_px
  double sigma_time = 0.0;          // s
  double flow_noise_factor = 10.0;  // flow direction jitter sigma = atan(sigma_pixel/focal * factor)
  int n_lines = 5;
  int n_events = 100;
  double outlier_fraction = 0.0;
  std::uint64_t seed = 0;
  bool pure_rotation = false;  // force v = 0

  double half_window() const { return 0.5 * window; }
};

struct Scene {
  MotionState motion;
  std::vector<PluckerLine> lines;
  std::vector<EventCluster> clusters;
};

// Stable per-trial / per-line seed derivation (splitmix64 over base ^ salt).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

// Random scene following the sampling protocol: omega and v uniform in their
// ranges, line anchors uniform in the cube, directions uniform on the sphere
// rejected until the angle with the imaging plane is below the configured
// limit. Noise and outliers are applied per the config. Deterministic under
// seed. Throws RejectionExhausted after 1e4 rejected lines.
Scene sample_scene(const SimConfig& config, std::uint64_t seed);

// Events of one line under the given screw motion. The anchor defaults to the
// line's closest point to the origin; sample_scene passes the cube anchor.
// Throws BehindCamera when an event cannot be placed in front of the camera
// within 100 attempts.
EventCluster synthesize_events(const PluckerLine& line, const MotionState& motion,
                               const SimConfig& config, std::uint64_t seed,
                               const std::optional<Vec3>& anchor = std::nullopt);

// Ground-truth normal flow direction for an event of the line at relative
// time t: the unit in-image direction perpendicular to the projected line.
// Throws DegenerateProjection when the line projects to a point.
Vec2 ground_truth_flow(const PluckerLine& line, const MotionState& motion, double t_rel);
NormalFlowSample ground_truth_flow(const PluckerLine& line, const MotionState& motion,
                                   const Event& event, double t_rel);

// Zero-mean Gaussian pixel and timestamp noise; flow directions jittered by a
// matched angular sigma. Zero sigmas return the input unchanged.
EventCluster add_noise(const EventCluster& cluster, const SimConfig& config,
                       std::uint64_t seed);

// Replaces floor(fraction * N) events with events synthesized from fresh
// unrelated random lines under the same motion, recording outlier flags.
EventCluster inject_outliers(const EventCluster& cluster, const MotionState& motion,
                             const SimConfig& config, double fraction, std::uint64_t seed);

}  // namespace evego
