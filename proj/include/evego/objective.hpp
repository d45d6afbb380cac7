#pragma once

#include <vector>

#include "evego/compress.hpp"
#include "evego/geometry.hpp"
#include "evego/types.hpp"

namespace evego {

enum class Formulation {
  Incidence,             // lambda_min of the 6x6 incidence Gram per cluster
  Coplanarity,           // lambda_min of the 3x3 plane-normal Gram per cluster
  IncidencePureRotation, // lambda_min of the bottom-right 3x3 minor of M
};

enum class GradientMode {
  FiniteDifference,
  ClosedForm,  // 3x3 formulations only
};

const char* formulation_name(Formulation f);

GradientMode default_gradient_mode(Formulation f);

struct ObjectiveSpec {
  Formulation formulation = Formulation::Coplanarity;
  Parametrization parametrization = Parametrization::Cascade;
  GradientMode gradient_mode = GradientMode::ClosedForm;
  double exponent_p = 1.0;

  // Throws std::invalid_argument on inconsistent combinations.
  void validate() const;
};

// Per-cluster material precomputed once per solve: body-frame inputs plus the
// compressed moment polynomials for the first-order parametrization.
struct ObjectiveContext {
  std::vector<Vec3> bearings;
  std::vector<double> times;
  std::vector<double> weights;  // empty = unit
  std::vector<Vec3> normals;    // empty when the cluster carries no flow
  QuadraticGram6 incidence_poly;
  QuadraticGram3 coplanarity_poly;
  QuadraticGram3 pure_rotation_poly;
  bool has_incidence_poly = false;
  bool has_coplanarity_poly = false;
  bool has_pure_rotation_poly = false;
};

// Validates per-cluster minimum event counts for the formulation
// (incidence >= 8, coplanarity >= 3 normals, pure-rotation >= 4) and builds
// whatever the formulation and parametrization need.
std::vector<ObjectiveContext> build_contexts(const std::vector<EventCluster>& clusters,
                                             const ObjectiveSpec& spec);

// Cluster Gram at omega for 3x3 formulations (coplanarity / pure-rotation).
Mat3 context_gram3(const ObjectiveContext& ctx, const ObjectiveSpec& spec, const Vec3& omega);
// Incidence Gram at omega.
Mat6 context_gram6(const ObjectiveContext& ctx, const ObjectiveSpec& spec, const Vec3& omega);

// sum_i max(lambda_min_i, 0)^p across clusters.
double objective_value(const std::vector<ObjectiveContext>& contexts,
                       const ObjectiveSpec& spec, const Vec3& omega);

// Convenience wrappers over build_contexts + objective_value.
double objective_incidence(const std::vector<EventCluster>& clusters, const Vec3& omega,
                           Parametrization p);
double objective_coplanarity(const std::vector<EventCluster>& clusters, const Vec3& omega,
                             Parametrization p);
double objective_pure_rotation(const std::vector<EventCluster>& clusters, const Vec3& omega,
                               Parametrization p);

}  // namespace evego
