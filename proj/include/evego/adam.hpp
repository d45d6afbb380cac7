#pragma once

#include <functional>
#include <string>
#include <vector>

#include "evego/objective.hpp"

namespace evego {

struct AdamConfig {
  double learning_rate = 1e-3;
  // Exponential step-size decay toward this value at max_iters; set equal to
  // learning_rate for a constant step. A constant step limit-cycles at an
  // amplitude of about the step size, which is too coarse for the accuracy
  // targets here.
  double final_learning_rate = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_iters = 2000;
  double grad_tolerance = 1e-10;
  // Absolute objective change over a 10-iteration window.
  double objective_tolerance = 1e-14;
  // Cascade stage split and refinement step sizes.
  double stage1_fraction = 0.6;
  double stage2_learning_rate = 1e-4;
  double stage2_final_learning_rate = 1e-6;
  // FDM step (forward differences).
  double fdm_step = 1e-6;

  void validate() const;
};

struct StageTrace {
  std::string stage;  // "approx", "exact" or "single"
  Vec3 omega = Vec3::Zero();
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SolveReport {
  Vec3 omega_est = Vec3::Zero();
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<StageTrace> stage_trace;
};

// Forward finite-difference gradient of an arbitrary scalar objective.
Vec3 grad_fdm(const std::function<double(const Vec3&)>& objective, const Vec3& omega,
              double step);

// Analytic gradient sum_i q_i^T dG_i/d omega q_i for the 3x3 formulations,
// where q_i is the unit eigenvector of the smallest eigenvalue of cluster i's
// Gram. Throws DegenerateEigenvalue when an eigen-gap falls below
// min_eigen_gap (relative to the Gram scale); callers fall back to FDM for
// that iteration.
Vec3 grad_closed(const std::vector<ObjectiveContext>& contexts, const ObjectiveSpec& spec,
                 const Vec3& omega, double min_eigen_gap = 1e-12);

// Adam minimization of the selected eigenvalue objective (Exact or FirstOrder
// parametrization). Returns the best-seen iterate, deterministically.
SolveReport adam_solve(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                       const AdamConfig& config, const Vec3& omega_init = Vec3::Zero());
SolveReport adam_solve(const ObjectiveSpec& spec, const std::vector<ObjectiveContext>& contexts,
                       const AdamConfig& config, const Vec3& omega_init = Vec3::Zero());

// Two-stage solve: first-order parametrization with compressed moments from
// omega = 0, then exact-parametrization refinement from the stage-1 optimum.
SolveReport cascade_solve(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                          const AdamConfig& config);
SolveReport cascade_solve(const ObjectiveSpec& spec,
                          const std::vector<ObjectiveContext>& contexts,
                          const AdamConfig& config);

// Dispatch on spec.parametrization (Cascade routes to cascade_solve).
SolveReport solve_rotation(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                           const AdamConfig& config);
SolveReport solve_rotation(const ObjectiveSpec& spec,
                           const std::vector<ObjectiveContext>& contexts,
                           const AdamConfig& config);

}  // namespace evego
