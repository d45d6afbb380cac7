#include "evego/geometry.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace evego {

Vec3 bearing_from_event(const Event& e) {
  return Vec3(e.x, e.y, 1.0).normalized();
}

Vec3 unrotate_bearing(const Vec3& f, const Vec3& omega, double t, Parametrization p) {
  return rotation_at(omega, t, p) * f;
}

Vec3 plucker_closest_point(const PluckerLine& line) {
  return line.d.cross(line.m) / line.d.squaredNorm();
}

LineFrame line_frame(const PluckerLine& line) {
  const Vec3 p0 = plucker_closest_point(line);
  const double dist = p0.norm();
  if (dist < 1e-9) {
    throw Error(ErrorCode::DegenerateLine, "line passes through the origin");
  }
  LineFrame frame;
  frame.e1 = line.d.normalized();
  frame.e3 = -p0 / dist;
  frame.e2 = frame.e3.cross(frame.e1);
  Mat3 r;
  r.col(0) = frame.e1;
  r.col(1) = frame.e2;
  r.col(2) = frame.e3;
  const Eigen::AngleAxisd aa(r);
  frame.theta = aa.angle() * aa.axis();
  return frame;
}

Vec3 plane_normal(const Vec3& bearing, const Vec2& g) {
  const Vec3 h(-g.y(), g.x(), 0.0);
  const Vec3 n = bearing.cross(h);
  if (n.norm() < 1e-12) {
    throw Error(ErrorCode::DegenerateFlow, "bearing parallel to image line direction");
  }
  return canonical_sign(Vec3(n.normalized()));
}

Vec3 plane_normal(const Event& e, const Vec2& g) {
  return plane_normal(bearing_from_event(e), g);
}

std::vector<Vec3> cluster_normals(const EventCluster& cluster) {
  std::vector<Vec3> normals;
  normals.reserve(cluster.size());
  for (std::size_t j = 0; j < cluster.size(); ++j) {
    normals.push_back(plane_normal(cluster.events[j], cluster.flows[j]));
  }
  return normals;
}

MatX6 build_incidence(const EventCluster& cluster, const Vec3& omega, Parametrization p) {
  const std::size_t n = cluster.size();
  MatX6 a(n, 6);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = cluster.rel_times[j];
    const Vec3 f = unrotate_bearing(bearing_from_event(cluster.events[j]), omega, t, p);
    const double w = cluster.weight(j);
    a.row(j).head<3>() = w * t * f.transpose();
    a.row(j).tail<3>() = w * f.transpose();
  }
  return a;
}

Mat6 gram_M(const MatX6& a) {
  Mat6 m = kGramScale * (a.transpose() * a);
  return Mat6(0.5 * (m + m.transpose()));
}

Mat3 gram_N(const std::vector<Vec3>& normals, const std::vector<double>& rel_times,
            const std::vector<double>& weights, const Vec3& omega, Parametrization p) {
  Mat3 n = Mat3::Zero();
  for (std::size_t j = 0; j < normals.size(); ++j) {
    const Vec3 nj = rotation_at(omega, rel_times[j], p) * normals[j];
    const double w = weights.empty() ? 1.0 : weights[j];
    n.noalias() += w * nj * nj.transpose();
  }
  n *= kGramScale;
  return Mat3(0.5 * (n + n.transpose()));
}

double incidence_residual(const Vec3& f_body, double t, const LineFrame& frame,
                          double u_y, double u_z) {
  return t * f_body.dot(u_z * frame.e2 - u_y * frame.e3) + f_body.dot(frame.e2);
}

}  // namespace evego
