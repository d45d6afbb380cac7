#include "evego/compress.hpp"

#include "evego/geometry.hpp"

namespace evego {

namespace {

// Accumulates the 10 coefficient matrices for one rank-1 term built from an
// affine family a(w) = a0 + wx*a1 + wy*a2 + wz*a3, weighted by w_out.
template <int Dim>
void accumulate_affine_outer(QuadraticGram<Dim>& g,
                             const std::array<Eigen::Matrix<double, Dim, 1>, 4>& a,
                             double w_out) {
  using Mat = Eigen::Matrix<double, Dim, Dim>;
  const Mat a00 = a[0] * a[0].transpose();
  g.coeff[0] += w_out * a00;
  for (int k = 0; k < 3; ++k) {
    const Mat cross = a[1 + k] * a[0].transpose();
    g.coeff[1 + k] += w_out * (cross + cross.transpose());
    g.coeff[4 + k] += w_out * (a[1 + k] * a[1 + k].transpose());
  }
  const Mat xy = a[1] * a[2].transpose();
  const Mat xz = a[1] * a[3].transpose();
  const Mat yz = a[2] * a[3].transpose();
  g.coeff[7] += w_out * (xy + xy.transpose());
  g.coeff[8] += w_out * (xz + xz.transpose());
  g.coeff[9] += w_out * (yz + yz.transpose());
}

}  // namespace

QuadraticGram6 compress_incidence(const EventCluster& cluster) {
  QuadraticGram6 g;
  for (std::size_t j = 0; j < cluster.size(); ++j) {
    const double t = cluster.rel_times[j];
    const Vec3 f = bearing_from_event(cluster.events[j]);
    const double w = cluster.weight(j);
    // Row of A: w * [t f'; f'] with f' = f + t (omega x f); the row weight
    // enters the Gram squared.
    std::array<Vec6, 4> a;
    a[0] << w * t * f, w * f;
    for (int k = 0; k < 3; ++k) {
      const Vec3 cxf = Vec3::Unit(k).cross(f);
      a[1 + k] << w * t * t * cxf, w * t * cxf;
    }
    accumulate_affine_outer(g, a, 1.0);
  }
  for (auto& c : g.coeff) c *= kGramScale;
  return g;
}

QuadraticGram3 compress_outer_sum(const std::vector<Vec3>& vectors,
                                  const std::vector<double>& rel_times,
                                  const std::vector<double>& weights) {
  QuadraticGram3 g;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const double t = rel_times[j];
    const Vec3& x = vectors[j];
    std::array<Vec3, 4> a;
    a[0] = x;
    for (int k = 0; k < 3; ++k) {
      a[1 + k] = t * Vec3::Unit(k).cross(x);
    }
    accumulate_affine_outer(g, a, weights.empty() ? 1.0 : weights[j]);
  }
  for (auto& c : g.coeff) c *= kGramScale;
  return g;
}

}  // namespace evego
