#pragma once

// Inverse mean curvature flow of radial graphs, du/dt = W / H, integrated
// with classical RK4 under an adaptive explicit stability bound.

#include <optional>

#include "imcf/hypersurface.hpp"
#include "imcf/trace.hpp"

namespace imcf::flow {

struct FlowConfig {
  double safety = 0.4;
  double t_end = 1.0;
  double record_dt = 0.1;
  /// Evolve u - t/(n-1) instead of u. Defaults to on for t_end > 15.
  std::optional<bool> rescale;
  double min_h = 1e-8;
  /// Accuracy cap on the step once the stability bound has relaxed.
  double max_dt = 0.05;

  void validate() const;
  bool rescaled() const noexcept { return rescale.value_or(t_end > 15.0); }
};

/// Step bound for symmetric states, which carry no spatial stiffness.
inline constexpr double kSymmetricStep = 0.00625;

/// Pointwise W / H; throws NonMeanConvex if min H <= min_h.
Field rhs(const GraphState& state, double min_h = 1e-8);

/// safety * dtheta^2 * min(lambda^2 H^2) / (2 (n-1)); safety * kSymmetricStep
/// for symmetric states.
double stable_dt(const GraphState& state, double safety, double min_h = 1e-8);

/// One RK4 step. With `rescaled` the drift 1/(n-1) is removed from the
/// evolved quantity and added back analytically.
GraphState step(const GraphState& state, double dt, bool rescaled = false, double min_h = 1e-8);

/// Snapshot of every trace quantity for `state`.
TraceRecord record_of(const GraphState& state);

struct FlowResult {
  FlowTrace trace;
  GraphState final_state;
  std::size_t steps = 0;
};

/// Integrates to config.t_end, recording every record_dt (and at t_end).
FlowResult run(const GraphState& initial, const FlowConfig& config);

}  // namespace imcf::flow
