#include "evego/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "evego/eigen_small.hpp"

namespace evego {

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::Incidence: return "inc";
    case Formulation::Coplanarity: return "cop";
    case Formulation::IncidencePureRotation: return "inc-pure";
  }
  return "unknown";
}

GradientMode default_gradient_mode(Formulation f) {
  return f == Formulation::Incidence ? GradientMode::FiniteDifference
                                     : GradientMode::ClosedForm;
}

void ObjectiveSpec::validate() const {
  if (exponent_p <= 0.0) {
    throw std::invalid_argument("ObjectiveSpec: exponent_p must be positive");
  }
  if (gradient_mode == GradientMode::ClosedForm && formulation == Formulation::Incidence) {
    throw std::invalid_argument(
        "ObjectiveSpec: closed-form gradients require a 3x3 formulation "
        "(coplanarity or pure-rotation)");
  }
}

namespace {

std::size_t min_events(Formulation f) {
  switch (f) {
    case Formulation::Incidence: return 8;
    case Formulation::Coplanarity: return 3;
    case Formulation::IncidencePureRotation: return 4;
  }
  return 0;
}

}  // namespace

std::vector<ObjectiveContext> build_contexts(const std::vector<EventCluster>& clusters,
                                             const ObjectiveSpec& spec) {
  spec.validate();
  if (clusters.empty()) {
    throw Error(ErrorCode::EmptyInput, "no clusters");
  }
  const bool needs_poly = spec.parametrization != Parametrization::Exact;
  std::vector<ObjectiveContext> contexts;
  contexts.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const EventCluster& c = clusters[i];
    ObjectiveContext ctx;
    ctx.times = c.rel_times;
    ctx.weights = c.weights;
    ctx.bearings.reserve(c.size());
    for (const Event& e : c.events) ctx.bearings.push_back(bearing_from_event(e));
    if (spec.formulation == Formulation::Coplanarity) {
      if (c.has_flow()) ctx.normals = cluster_normals(c);
    }

    const std::size_t n = spec.formulation == Formulation::Coplanarity
                              ? ctx.normals.size()
                              : ctx.bearings.size();
    if (n < min_events(spec.formulation)) {
      throw Error(ErrorCode::InsufficientEvents,
                  "cluster " + std::to_string(i) + " has " + std::to_string(n) +
                      " observations, need >= " +
                      std::to_string(min_events(spec.formulation)) + " for " +
                      formulation_name(spec.formulation));
    }

    if (needs_poly) {
      switch (spec.formulation) {
        case Formulation::Incidence: {
          EventCluster tmp;
          tmp.events = c.events;
          tmp.rel_times = c.rel_times;
          tmp.weights = c.weights;
          ctx.incidence_poly = compress_incidence(tmp);
          ctx.has_incidence_poly = true;
          break;
        }
        case Formulation::Coplanarity:
          ctx.coplanarity_poly = compress_outer_sum(ctx.normals, ctx.times, ctx.weights);
          ctx.has_coplanarity_poly = true;
          break;
        case Formulation::IncidencePureRotation:
          ctx.pure_rotation_poly = compress_outer_sum(ctx.bearings, ctx.times, ctx.weights);
          ctx.has_pure_rotation_poly = true;
          break;
      }
    }
    contexts.push_back(std::move(ctx));
  }
  return contexts;
}

Mat6 context_gram6(const ObjectiveContext& ctx, const ObjectiveSpec& spec, const Vec3& omega) {
  if (spec.parametrization == Parametrization::FirstOrder && ctx.has_incidence_poly) {
    return ctx.incidence_poly.evaluate(omega);
  }
  Mat6 m = Mat6::Zero();
  Vec6 a;
  for (std::size_t j = 0; j < ctx.bearings.size(); ++j) {
    const double t = ctx.times[j];
    const Vec3 f = rotation_at(omega, t, spec.parametrization) * ctx.bearings[j];
    const double w = ctx.weights.empty() ? 1.0 : ctx.weights[j];
    a << w * t * f, w * f;
    m.selfadjointView<Eigen::Lower>().rankUpdate(a);
  }
  m *= kGramScale;
  return Mat6(m.selfadjointView<Eigen::Lower>());
}

Mat3 context_gram3(const ObjectiveContext& ctx, const ObjectiveSpec& spec, const Vec3& omega) {
  const bool pure = spec.formulation == Formulation::IncidencePureRotation;
  if (spec.parametrization == Parametrization::FirstOrder) {
    if (pure && ctx.has_pure_rotation_poly) return ctx.pure_rotation_poly.evaluate(omega);
    if (!pure && ctx.has_coplanarity_poly) return ctx.coplanarity_poly.evaluate(omega);
  }
  const std::vector<Vec3>& vectors = pure ? ctx.bearings : ctx.normals;
  Mat3 m = Mat3::Zero();
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const Vec3 x = rotation_at(omega, ctx.times[j], spec.parametrization) * vectors[j];
    const double w = ctx.weights.empty() ? 1.0 : ctx.weights[j];
    m.selfadjointView<Eigen::Lower>().rankUpdate(x, w);
  }
  m *= kGramScale;
  return Mat3(m.selfadjointView<Eigen::Lower>());
}

namespace {

double power_term(double lambda, double p) {
  const double clamped = lambda > 0.0 ? lambda : 0.0;
  return p == 1.0 ? clamped : std::pow(clamped, p);
}

}  // namespace

double objective_value(const std::vector<ObjectiveContext>& contexts,
                       const ObjectiveSpec& spec, const Vec3& omega) {
  double sum = 0.0;
  for (const ObjectiveContext& ctx : contexts) {
    double lambda;
    if (spec.formulation == Formulation::Incidence) {
      lambda = sym6_smallest_eigenvalue(context_gram6(ctx, spec, omega));
    } else {
      lambda = sym3_smallest_eigenvalue(context_gram3(ctx, spec, omega));
    }
    sum += power_term(lambda, spec.exponent_p);
  }
  return sum;
}

namespace {

double objective_for(const std::vector<EventCluster>& clusters, const Vec3& omega,
                     Parametrization p, Formulation f) {
  ObjectiveSpec spec;
  spec.formulation = f;
  spec.parametrization = p == Parametrization::Cascade ? Parametrization::Exact : p;
  spec.gradient_mode = default_gradient_mode(f);
  return objective_value(build_contexts(clusters, spec), spec, omega);
}

}  // namespace

double objective_incidence(const std::vector<EventCluster>& clusters, const Vec3& omega,
                           Parametrization p) {
  return objective_for(clusters, omega, p, Formulation::Incidence);
}

double objective_coplanarity(const std::vector<EventCluster>& clusters, const Vec3& omega,
                             Parametrization p) {
  return objective_for(clusters, omega, p, Formulation::Coplanarity);
}

double objective_pure_rotation(const std::vector<EventCluster>& clusters, const Vec3& omega,
                               Parametrization p) {
  return objective_for(clusters, omega, p, Formulation::IncidencePureRotation);
}

}  // namespace evego
