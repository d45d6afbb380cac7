#pragma once

#include <vector>

#include "evego/rotation.hpp"
#include "evego/types.hpp"

namespace evego {

// f = (x, y, 1) / |(x, y, 1)|.
Vec3 bearing_from_event(const Event& e);

// f' = R(omega; t) f, expressed in the body frame. Unit norm is preserved
// only under the exact parametrization.
Vec3 unrotate_bearing(const Vec3& f, const Vec3& omega, double t, Parametrization p);

// Line-dependent frame of a Plucker line. Throws DegenerateLine when the line
// passes through the origin (closest point below 1e-9).
LineFrame line_frame(const PluckerLine& line);

// Closest point of the line to the origin, (d x m) / |d|^2.
Vec3 plucker_closest_point(const PluckerLine& line);

// Plane normal from an event bearing and its normal flow direction g:
// n ~ f x (-g_y, g_x, 0), unit length, canonical sign. Invariant to positive
// rescaling of g. Throws DegenerateFlow when the cross product vanishes.
Vec3 plane_normal(const Event& e, const Vec2& g);
Vec3 plane_normal(const Vec3& bearing, const Vec2& g);

// Camera-frame plane normals for every event of a cluster that carries flow.
std::vector<Vec3> cluster_normals(const EventCluster& cluster);

// N x 6 incidence matrix with rows w_j * [t_j f'_j^T, f'_j^T].
MatX6 build_incidence(const EventCluster& cluster, const Vec3& omega, Parametrization p);

// M = scale * A^T A, symmetric PSD 6x6.
Mat6 gram_M(const MatX6& a);

// N(omega) = scale * sum_j w_j (R_j n_j)(R_j n_j)^T, symmetric PSD 3x3.
Mat3 gram_N(const std::vector<Vec3>& normals, const std::vector<double>& rel_times,
            const std::vector<double>& weights, const Vec3& omega, Parametrization p);

// Incidence residual of one event against a line frame and partial velocity
// u = (0, u_y, u_z) in that frame: t * f'^T (u_z e2 - u_y e3) + f'^T e2.
double incidence_residual(const Vec3& f_body, double t, const LineFrame& frame,
                          double u_y, double u_z);

}  // namespace evego
