#include "evego/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "evego/geometry.hpp"
#include "evego/rotation.hpp"

namespace evego {

namespace {

constexpr int kMaxLineRejections = 10000;
constexpr int kMaxEventAttempts = 100;
constexpr double kMinBearingZ = 1e-6;

using Rng = std::mt19937_64;

Vec3 uniform_sphere(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 d;
  do {
    d = Vec3(gauss(rng), gauss(rng), gauss(rng));
  } while (d.norm() < 1e-12);
  return d.normalized();
}

struct LineSample {
  PluckerLine line;
  Vec3 anchor;
};

// One anchor + direction draw; the caller applies the acceptance tests.
LineSample draw_line(Rng& rng, const SimConfig& config) {
  std::uniform_real_distribution<double> cube(-0.5 * config.cube_side, 0.5 * config.cube_side);
  LineSample s;
  s.anchor = config.cube_center + Vec3(cube(rng), cube(rng), cube(rng));
  const Vec3 d = canonical_sign(uniform_sphere(rng));
  s.line.d = d;
  s.line.m = s.anchor.cross(d);
  return s;
}

bool line_angle_ok(const PluckerLine& line, const SimConfig& config) {
  // Angle between the direction and the imaging plane is asin(|d_z|).
  const double limit = std::sin(config.max_line_plane_angle_deg * M_PI / 180.0);
  return std::abs(line.d.z()) < limit;
}

Event make_event(const Vec3& point, const MotionState& motion, double t, Rng& rng,
                 bool* in_front) {
  const Mat3 r = rotation_exact(motion.omega, t);
  const Vec3 x_cam = r.transpose() * (point - t * motion.v);
  if (x_cam.z() <= kMinBearingZ) {
    *in_front = false;
    return Event{};
  }
  *in_front = true;
  Event e;
  e.x = x_cam.x() / x_cam.z();
  e.y = x_cam.y() / x_cam.z();
  e.tau = t;
  e.polarity = (rng() & 1u) ? 1 : -1;
  return e;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  // splitmix64
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Vec2 ground_truth_flow(const PluckerLine& line, const MotionState& motion, double t_rel) {
  // The projected line's homogeneous coefficients equal the camera-frame
  // moment; its in-image gradient direction is the first two components.
  const Mat3 r = rotation_exact(motion.omega, t_rel);
  const Vec3 p0 = plucker_closest_point(line);
  const Vec3 d_cam = r.transpose() * line.d;
  const Vec3 p_cam = r.transpose() * (p0 - t_rel * motion.v);
  const Vec3 m_cam = p_cam.cross(d_cam);
  const Vec2 g(m_cam.x(), m_cam.y());
  const double n = g.norm();
  if (n < 1e-12) {
    throw Error(ErrorCode::DegenerateProjection, "line projects to a point");
  }
  return g / n;
}

NormalFlowSample ground_truth_flow(const PluckerLine& line, const MotionState& motion,
                                   const Event& event, double t_rel) {
  NormalFlowSample s;
  s.event = event;
  s.g = ground_truth_flow(line, motion, t_rel);
  return s;
}

EventCluster synthesize_events(const PluckerLine& line, const MotionState& motion,
                               const SimConfig& config, std::uint64_t seed,
                               const std::optional<Vec3>& anchor_opt) {
  Rng rng(seed);
  const Vec3 anchor = anchor_opt.value_or(plucker_closest_point(line));
  const double hw = config.half_window();
  std::uniform_real_distribution<double> time_dist(-hw, hw);
  std::uniform_real_distribution<double> arc_dist(-config.line_point_radius,
                                                  config.line_point_radius);

  EventCluster cluster;
  cluster.tau_s = 0.0;
  cluster.half_window = hw;
  cluster.events.reserve(config.n_events);
  cluster.rel_times.reserve(config.n_events);
  cluster.flows.reserve(config.n_events);

  for (int j = 0; j < config.n_events; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxEventAttempts; ++attempt) {
      const double t = time_dist(rng);
      const Vec3 point = anchor + arc_dist(rng) * line.d;
      bool in_front = false;
      const Event e = make_event(point, motion, t, rng, &in_front);
      if (!in_front) continue;
      Vec2 g;
      try {
        g = ground_truth_flow(line, motion, t);
      } catch (const Error&) {
        continue;
      }
      cluster.events.push_back(e);
      cluster.rel_times.push_back(t);
      cluster.flows.push_back(g);
      placed = true;
      break;
    }
    if (!placed) {
      throw Error(ErrorCode::BehindCamera,
                  "could not place event in front of the camera");
    }
  }
  return cluster;
}

Scene sample_scene(const SimConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> omega_dist(-config.omega_range, config.omega_range);
  std::uniform_real_distribution<double> v_dist(-config.v_range, config.v_range);

  Scene scene;
  scene.motion.omega = Vec3(omega_dist(rng), omega_dist(rng), omega_dist(rng));
  scene.motion.v = Vec3(v_dist(rng), v_dist(rng), v_dist(rng));
  if (config.pure_rotation) {
    scene.motion.v.setZero();
  }

  int rejections = 0;
  for (int i = 0; i < config.n_lines; ++i) {
    while (true) {
      if (rejections >= kMaxLineRejections) {
        throw Error(ErrorCode::RejectionExhausted, "line sampling rejection limit reached");
      }
      const LineSample sample = draw_line(rng, config);
      if (!line_angle_ok(sample.line, config)) {
        ++rejections;
        continue;
      }
      if (plucker_closest_point(sample.line).norm() < 1e-6) {
        ++rejections;
        continue;
      }
      EventCluster cluster;
      try {
        cluster = synthesize_events(sample.line, scene.motion, config,
                                    derive_seed(seed, 1000 + i), sample.anchor);
      } catch (const Error&) {
        ++rejections;
        continue;
      }
      if (config.outlier_fraction > 0.0) {
        cluster = inject_outliers(cluster, scene.motion, config, config.outlier_fraction,
                                  derive_seed(seed, 2000 + i));
      }
      if (config.sigma_pixel > 0.0 || config.sigma_time > 0.0) {
        cluster = add_noise(cluster, config, derive_seed(seed, 3000 + i));
      }
      scene.lines.push_back(sample.line);
      scene.clusters.push_back(std::move(cluster));
      break;
    }
  }
  return scene;
}

EventCluster add_noise(const EventCluster& cluster, const SimConfig& config,
                       std::uint64_t seed) {
  if (config.sigma_pixel <= 0.0 && config.sigma_time <= 0.0) {
    return cluster;
  }
  Rng rng(seed);
  EventCluster out = cluster;
  const double sigma_coord = config.sigma_pixel / config.focal_px;
  const double sigma_flow_angle =
      std::atan(config.sigma_pixel / config.focal_px * config.flow_noise_factor);
  std::normal_distribution<double> coord_noise(0.0, sigma_coord);
  std::normal_distribution<double> time_noise(0.0, config.sigma_time);
  std::normal_distribution<double> angle_noise(0.0, sigma_flow_angle);

  double max_abs_t = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (config.sigma_pixel > 0.0) {
      out.events[j].x += coord_noise(rng);
      out.events[j].y += coord_noise(rng);
      const double a = angle_noise(rng);
      const double c = std::cos(a);
      const double s = std::sin(a);
      const Vec2 g = out.flows[j];
      out.flows[j] = Vec2(c * g.x() - s * g.y(), s * g.x() + c * g.y());
    }
    if (config.sigma_time > 0.0) {
      out.events[j].tau += time_noise(rng);
      out.rel_times[j] = out.events[j].tau - out.tau_s;
    }
    max_abs_t = std::max(max_abs_t, std::abs(out.rel_times[j]));
  }
  out.half_window = std::max(out.half_window, max_abs_t);
  return out;
}

EventCluster inject_outliers(const EventCluster& cluster, const MotionState& motion,
                             const SimConfig& config, double fraction, std::uint64_t seed) {
  if (fraction <= 0.0) {
    return cluster;
  }
  Rng rng(seed);
  EventCluster out = cluster;
  const std::size_t n = out.size();
  out.outlier_flags.assign(n, 0);

  const auto k = static_cast<std::size_t>(fraction * static_cast<double>(n));
  std::vector<std::size_t> indices(n);
  for (std::size_t j = 0; j < n; ++j) indices[j] = j;
  std::shuffle(indices.begin(), indices.end(), rng);

  std::uniform_real_distribution<double> time_dist(-out.half_window, out.half_window);
  std::uniform_real_distribution<double> arc_dist(-config.line_point_radius,
                                                  config.line_point_radius);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t j = indices[c];
    // A fresh unrelated line per outlier keeps the contamination incoherent.
    while (true) {
      const LineSample sample = draw_line(rng, config);
      if (!line_angle_ok(sample.line, config)) continue;
      const double t = time_dist(rng);
      const Vec3 point = sample.anchor + arc_dist(rng) * sample.line.d;
      bool in_front = false;
      const Event e = make_event(point, motion, t, rng, &in_front);
      if (!in_front) continue;
      Vec2 g;
      try {
        g = ground_truth_flow(sample.line, motion, t);
      } catch (const Error&) {
        continue;
      }
      out.events[j] = e;
      out.rel_times[j] = t;
      out.flows[j] = g;
      out.outlier_flags[j] = 1;
      break;
    }
  }
  return out;
}

}  // namespace evego
