#include "evego/adam.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "evego/eigen_small.hpp"

namespace evego {

void AdamConfig::validate() const {
  if (learning_rate <= 0.0 || final_learning_rate <= 0.0) {
    throw std::invalid_argument("AdamConfig: learning rates must be positive");
  }
  if (beta1 <= 0.0 || beta1 >= 1.0 || beta2 <= 0.0 || beta2 >= 1.0) {
    throw std::invalid_argument("AdamConfig: betas must lie in (0, 1)");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("AdamConfig: max_iters must be >= 1");
  }
  if (stage1_fraction <= 0.0 || stage1_fraction >= 1.0) {
    throw std::invalid_argument("AdamConfig: stage1_fraction must lie in (0, 1)");
  }
  if (fdm_step <= 0.0) {
    throw std::invalid_argument("AdamConfig: fdm_step must be positive");
  }
}

Vec3 grad_fdm(const std::function<double(const Vec3&)>& objective, const Vec3& omega,
              double step) {
  const double j0 = objective(omega);
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    Vec3 shifted = omega;
    shifted[k] += step;
    g[k] = (objective(shifted) - j0) / step;
  }
  return g;
}

namespace {

struct Evaluation {
  double value = 0.0;
  Vec3 grad = Vec3::Zero();
};

double power_term(double lambda, double p) {
  const double clamped = lambda > 0.0 ? lambda : 0.0;
  return p == 1.0 ? clamped : std::pow(clamped, p);
}

// One pass per cluster computing both the objective term and its analytic
// gradient. Throws DegenerateEigenvalue at eigenvalue crossings.
Evaluation evaluate_closed(const std::vector<ObjectiveContext>& contexts,
                           const ObjectiveSpec& spec, const Vec3& omega,
                           double min_eigen_gap) {
  const bool pure = spec.formulation == Formulation::IncidencePureRotation;
  const bool first_order = spec.parametrization == Parametrization::FirstOrder;
  Evaluation out;
  for (const ObjectiveContext& ctx : contexts) {
    const Mat3 gram = context_gram3(ctx, spec, omega);
    const Vec3 evals = sym3_eigenvalues(gram);
    const double scale = std::max(std::abs(evals[2]), 1.0);
    if (evals[1] - evals[0] < min_eigen_gap * scale) {
      throw Error(ErrorCode::DegenerateEigenvalue,
                  "eigen-gap below threshold; eigenvector derivative undefined");
    }
    const EigenPair3 pair = smallest_eigenpair(gram);
    const Vec3& q = pair.vector;
    out.value += power_term(pair.value, spec.exponent_p);

    double chain = 1.0;
    if (spec.exponent_p != 1.0) {
      chain = spec.exponent_p *
              std::pow(std::max(pair.value, 1e-300), spec.exponent_p - 1.0);
    }

    if (first_order) {
      const QuadraticGram3& poly = pure ? ctx.pure_rotation_poly : ctx.coplanarity_poly;
      for (int k = 0; k < 3; ++k) {
        out.grad[k] += chain * q.dot(poly.derivative(omega, k) * q);
      }
    } else {
      const std::vector<Vec3>& vectors = pure ? ctx.bearings : ctx.normals;
      Vec3 partial = Vec3::Zero();
      for (std::size_t j = 0; j < vectors.size(); ++j) {
        const double t = ctx.times[j];
        const double w = ctx.weights.empty() ? 1.0 : ctx.weights[j];
        const Mat3 r = rotation_exact(omega, t);
        const std::array<Mat3, 3> dr = rotation_exact_jacobian(omega, t);
        const double qx = q.dot(r * vectors[j]);
        for (int k = 0; k < 3; ++k) {
          partial[k] += 2.0 * w * qx * q.dot(dr[k] * vectors[j]);
        }
      }
      out.grad += chain * kGramScale * partial;
    }
  }
  return out;
}

Evaluation evaluate(const std::vector<ObjectiveContext>& contexts, const ObjectiveSpec& spec,
                    const AdamConfig& config, const Vec3& omega) {
  if (spec.gradient_mode == GradientMode::ClosedForm) {
    try {
      return evaluate_closed(contexts, spec, omega, 1e-12);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateEigenvalue) throw;
      // Eigenvector derivative undefined at a crossing; FDM for this iterate.
    }
  }
  Evaluation out;
  const auto objective = [&](const Vec3& w) { return objective_value(contexts, spec, w); };
  out.value = objective(omega);
  for (int k = 0; k < 3; ++k) {
    Vec3 shifted = omega;
    shifted[k] += config.fdm_step;
    out.grad[k] = (objective(shifted) - out.value) / config.fdm_step;
  }
  return out;
}

StageTrace run_adam_stage(const std::vector<ObjectiveContext>& contexts,
                          const ObjectiveSpec& spec, const AdamConfig& config,
                          const Vec3& omega_init, int max_iters, double lr0, double lr_final,
                          const std::string& stage_name) {
  Vec3 omega = omega_init;
  Vec3 m = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  Vec3 best_omega = omega_init;
  double best_value = objective_value(contexts, spec, omega_init);

  const double decay =
      max_iters > 1 ? std::pow(lr_final / lr0, 1.0 / (max_iters - 1)) : 1.0;

  std::deque<double> window;
  window.push_back(best_value);

  bool converged = false;
  int iters = 0;
  double lr = lr0;
  for (int t = 1; t <= max_iters; ++t) {
    const Evaluation eval = evaluate(contexts, spec, config, omega);
    if (eval.value < best_value) {
      best_value = eval.value;
      best_omega = omega;
    }

    window.push_back(eval.value);
    if (window.size() > 11) window.pop_front();
    const bool grad_small = eval.grad.cwiseAbs().maxCoeff() <= config.grad_tolerance;
    const bool objective_flat =
        window.size() == 11 &&
        std::abs(window.front() - window.back()) <= config.objective_tolerance;
    if (grad_small && objective_flat) {
      converged = true;
      iters = t - 1;
      break;
    }

    m = config.beta1 * m + (1.0 - config.beta1) * eval.grad;
    v = config.beta2 * v + (1.0 - config.beta2) * eval.grad.cwiseProduct(eval.grad);
    const Vec3 m_hat = m / (1.0 - std::pow(config.beta1, t));
    const Vec3 v_hat = v / (1.0 - std::pow(config.beta2, t));
    omega -= lr * (m_hat.array() / (v_hat.array().sqrt() + config.epsilon)).matrix();
    lr *= decay;
    iters = t;
  }

  const double final_value = objective_value(contexts, spec, omega);
  if (final_value < best_value) {
    best_value = final_value;
    best_omega = omega;
  }

  StageTrace trace;
  trace.stage = stage_name;
  trace.omega = best_omega;
  trace.objective = std::max(best_value, 0.0);
  trace.iterations = iters;
  trace.converged = converged;
  return trace;
}

SolveReport report_from_stages(std::vector<StageTrace> stages) {
  SolveReport report;
  const StageTrace& last = stages.back();
  report.omega_est = last.omega;
  report.objective_value = last.objective;
  report.converged = last.converged;
  for (const StageTrace& s : stages) report.iterations += s.iterations;
  report.stage_trace = std::move(stages);
  return report;
}

}  // namespace

Vec3 grad_closed(const std::vector<ObjectiveContext>& contexts, const ObjectiveSpec& spec,
                 const Vec3& omega, double min_eigen_gap) {
  if (spec.formulation == Formulation::Incidence) {
    throw std::invalid_argument("grad_closed: incidence objective has no closed form");
  }
  return evaluate_closed(contexts, spec, omega, min_eigen_gap).grad;
}

SolveReport adam_solve(const ObjectiveSpec& spec, const std::vector<ObjectiveContext>& contexts,
                       const AdamConfig& config, const Vec3& omega_init) {
  spec.validate();
  config.validate();
  if (spec.parametrization == Parametrization::Cascade) {
    throw std::invalid_argument("adam_solve: cascade handled by cascade_solve");
  }
  StageTrace trace = run_adam_stage(contexts, spec, config, omega_init, config.max_iters,
                                    config.learning_rate, config.final_learning_rate, "single");
  return report_from_stages({std::move(trace)});
}

SolveReport adam_solve(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                       const AdamConfig& config, const Vec3& omega_init) {
  return adam_solve(spec, build_contexts(clusters, spec), config, omega_init);
}

SolveReport cascade_solve(const ObjectiveSpec& spec,
                          const std::vector<ObjectiveContext>& contexts,
                          const AdamConfig& config) {
  spec.validate();
  config.validate();
  const int stage1_iters =
      std::max(1, static_cast<int>(config.max_iters * config.stage1_fraction));
  const int stage2_iters = std::max(1, config.max_iters - stage1_iters);

  ObjectiveSpec stage1 = spec;
  stage1.parametrization = Parametrization::FirstOrder;
  StageTrace t1 = run_adam_stage(contexts, stage1, config, Vec3::Zero(), stage1_iters,
                                 config.learning_rate, config.final_learning_rate, "approx");

  ObjectiveSpec stage2 = spec;
  stage2.parametrization = Parametrization::Exact;
  StageTrace t2 = run_adam_stage(contexts, stage2, config, t1.omega, stage2_iters,
                                 config.stage2_learning_rate,
                                 config.stage2_final_learning_rate, "exact");

  return report_from_stages({std::move(t1), std::move(t2)});
}

SolveReport cascade_solve(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                          const AdamConfig& config) {
  ObjectiveSpec build_spec = spec;
  build_spec.parametrization = Parametrization::Cascade;  // both stages needed
  return cascade_solve(spec, build_contexts(clusters, build_spec), config);
}

SolveReport solve_rotation(const ObjectiveSpec& spec,
                           const std::vector<ObjectiveContext>& contexts,
                           const AdamConfig& config) {
  if (spec.parametrization == Parametrization::Cascade) {
    return cascade_solve(spec, contexts, config);
  }
  return adam_solve(spec, contexts, config);
}

SolveReport solve_rotation(const ObjectiveSpec& spec, const std::vector<EventCluster>& clusters,
                           const AdamConfig& config) {
  return solve_rotation(spec, build_contexts(clusters, spec), config);
}

}  // namespace evego
