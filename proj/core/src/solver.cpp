#include "imcf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imcf/errors.hpp"
#include "imcf/functionals.hpp"

namespace imcf::flow {
namespace {

constexpr double kLambdaLimit = 1e150;

void check_representable(const GraphState& state) {
  const auto [lo, hi] = std::minmax_element(state.u().begin(), state.u().end());
  const double lam = warped::lambda(*hi, state.ambient().epsilon());
  if (!std::isfinite(lam) || lam > kLambdaLimit || !std::isfinite(*lo))
    throw NumericalOverflow(state.t(), "warping factor out of range (lambda=" + std::to_string(lam) + ")");
}

}  // namespace

void FlowConfig::validate() const {
  if (!(safety > 0.0 && safety <= 1.0)) throw InvalidParameter("safety must lie in (0, 1]");
  if (!(t_end > 0.0)) throw InvalidParameter("t_end must be positive");
  if (!(record_dt > 0.0) || record_dt > t_end)
    throw InvalidParameter("record_dt must be positive and <= t_end");
  if (!(min_h > 0.0)) throw InvalidParameter("min_H must be positive");
  if (!(max_dt > 0.0)) throw InvalidParameter("max_dt must be positive");
}

Field rhs(const GraphState& state, double min_h) {
  const int n = state.ambient().n();
  if (state.symmetric()) {
    const int eps = state.ambient().epsilon();
    const double s = state.u()[0];
    const double h = (n - 1) * warped::lambda_dot(s, eps) / warped::lambda(s, eps);
    if (!(h > min_h)) throw NonMeanConvex(state.t(), h);
    return Field{1.0 / h};
  }
  const Field h = surface::mean_curvature(state);
  const Field w = surface::w_factor(state);
  Field out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > min_h)) throw NonMeanConvex(state.t(), h[i]);
    out[i] = w[i] / h[i];
  }
  return out;
}

double stable_dt(const GraphState& state, double safety, double min_h) {
  if (state.symmetric()) {
    rhs(state, min_h);
    return safety * kSymmetricStep;
  }
  const Field h = surface::mean_curvature(state);
  const int eps = state.ambient().epsilon();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > min_h)) throw NonMeanConvex(state.t(), h[i]);
    const double lam = warped::lambda(state.u()[i], eps);
    worst = std::min(worst, lam * lam * h[i] * h[i]);
  }
  const double dx = state.spacing();
  return safety * dx * dx * worst / (2.0 * (state.ambient().n() - 1));
}

GraphState step(const GraphState& state, double dt, bool rescaled, double min_h) {
  const double drift = rescaled ? 1.0 / (state.ambient().n() - 1) : 0.0;
  const Field& u0 = state.u();
  const std::size_t size = u0.size();
  const double t0 = state.t();

  // Stages act on the evolved variable; geometry always sees the true u.
  auto stage = [&](const Field& base, const Field& k, double a, double t) {
    Field u(size);
    for (std::size_t i = 0; i < size; ++i) u[i] = base[i] + a * dt * k[i];
    if (rescaled)
      for (auto& x : u) x += a * dt * drift;
    return state.with_u(std::move(u), t);
  };
  auto speed = [&](const GraphState& s) {
    Field k = rhs(s, min_h);
    if (rescaled)
      for (auto& x : k) x -= drift;
    return k;
  };

  const Field k1 = speed(state);
  const Field k2 = speed(stage(u0, k1, 0.5, t0 + 0.5 * dt));
  const Field k3 = speed(stage(u0, k2, 0.5, t0 + 0.5 * dt));
  const Field k4 = speed(stage(u0, k3, 1.0, t0 + dt));

  Field u(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double tilde = (rescaled ? u0[i] - t0 * drift : u0[i]) +
                         dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    u[i] = rescaled ? tilde + (t0 + dt) * drift : tilde;
  }
  return state.with_u(std::move(u), t0 + dt);
}

TraceRecord record_of(const GraphState& state) {
  const auto& amb = state.ambient();
  const int n = amb.n();
  const auto geo = surface::evaluate(state);
  const auto f = functionals::functionals_of(state, geo);

  TraceRecord r;
  r.t = state.t();
  r.area = f.area;
  r.anorm = f.anorm;
  r.I = f.I;
  r.J = f.J;
  r.K = f.K;
  r.L = f.L;
  r.jk_norm = (f.J - f.K) / std::pow(f.anorm, static_cast<double>(n) / (n - 1));
  r.af_deficit = functionals::af_deficit(amb, f);
  r.brendle_deficit = functionals::brendle_deficit(state, geo);

  const auto [hmin, hmax] = std::minmax_element(geo.mean_curvature.begin(), geo.mean_curvature.end());
  r.min_h = *hmin;
  r.max_h = *hmax;
  double wh = 0.0;
  for (std::size_t i = 0; i < geo.w.size(); ++i) wh += geo.w[i] / geo.mean_curvature[i];
  r.mean_wh = wh / static_cast<double>(geo.w.size());
  r.max_grad_v = *std::max_element(geo.grad_v.begin(), geo.grad_v.end());
  r.max_umbilicity = *std::max_element(geo.umbilicity.begin(), geo.umbilicity.end());
  r.minkowski_resid = surface::minkowski_residual(state);

  const double decay = std::exp(-state.t() / (n - 1));
  const auto [umin, umax] = std::minmax_element(state.u().begin(), state.u().end());
  r.w_range = (std::exp(*umax) - std::exp(*umin)) * decay;
  double mean_u = 0.0;
  for (double u : state.u()) mean_u += u;
  r.mean_rescaled_u = mean_u / static_cast<double>(state.size()) - state.t() / (n - 1);
  return r;
}

FlowResult run(const GraphState& initial, const FlowConfig& config) {
  config.validate();
  const auto& amb = initial.ambient();
  FlowResult result{FlowTrace{}, initial, 0};
  auto& trace = result.trace;
  trace.n = amb.n();
  trace.epsilon = amb.epsilon();
  trace.theta = amb.theta();
  trace.spacing = initial.spacing();
  trace.record_dt = config.record_dt;

  rhs(initial, config.min_h);
  const bool rescaled = config.rescaled();
  GraphState state = initial;
  const double t_start = initial.t();
  trace.records.push_back(record_of(state));

  const auto intervals = static_cast<std::size_t>(std::ceil(config.t_end / config.record_dt - 1e-9));
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double target = t_start + std::min(k * config.record_dt, config.t_end);
    while (state.t() < target) {
      check_representable(state);
      double dt = std::min({stable_dt(state, config.safety, config.min_h), config.max_dt,
                            target - state.t()});
      if (target - state.t() - dt <= 1e-12 * std::max(1.0, target)) dt = target - state.t();
      state = step(state, dt, rescaled, config.min_h);
      ++result.steps;
    }
    state = state.with_u(state.u(), target);
    trace.records.push_back(record_of(state));
  }
  result.final_state = state;
  return result;
}

}  // namespace imcf::flow
