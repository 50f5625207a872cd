#pragma once

// Integral quantities of closed star-shaped hypersurfaces and the
// inequalities relating them:
//
//   I = int rho H,   J = int p,   K = theta A^{n/(n-1)},
//   L = (I - (n-1) K) / A^{(n-2)/(n-1)},   A = area / theta.

#include <iosfwd>
#include <string>
#include <vector>

#include "imcf/hypersurface.hpp"
#include "imcf/trace.hpp"

namespace imcf::functionals {

struct Functionals {
  double area = 0.0;
  double anorm = 0.0;
  double I = 0.0;
  double J = 0.0;
  double K = 0.0;
  double L = 0.0;
};

Functionals functionals_of(const GraphState& state);
Functionals functionals_of(const GraphState& state, const surface::SurfaceGeometry& geo);

/// c_n I - (A^{n/(n-1)} + eps A^{(n-2)/(n-1)}) / 2; nonnegative for strictly
/// mean convex star-shaped hypersurfaces, zero exactly on slices.
double af_deficit(const GraphState& state);
double af_deficit(const AmbientModel& ambient, const Functionals& f);

/// The same deficit rebuilt from L: c_n (L - (n-1) theta eps) A^{(n-2)/(n-1)}.
double af_deficit_from_l(const AmbientModel& ambient, const Functionals& f);

/// (n-1) int lambda'/H - int p; nonnegative, zero on umbilic hypersurfaces.
double brendle_deficit(const GraphState& state);
double brendle_deficit(const GraphState& state, const surface::SurfaceGeometry& geo);

/// int rho / H.
double inverse_h_integral(const GraphState& state, const surface::SurfaceGeometry& geo);

/// Name, worst violation (<= 0 passes), where it happened and the tolerance
/// that was applied there.
struct InequalityReport {
  std::string name;
  /// max over samples of (violation - local tolerance); <= 0 passes.
  double worst_violation = 0.0;
  std::string location;
  /// tolerance in force at the worst sample
  double tolerance = 0.0;
  std::string note;

  bool passed() const noexcept { return worst_violation <= 0.0; }
};

/// Finite-difference checks along a recorded flow: jk_norm non-decreasing,
/// L non-increasing, dA/dt = A, dJ/dt = n int rho/H, and J <= K.
std::vector<InequalityReport> monotonicity_report(const FlowTrace& trace);

/// Late-time limits of a flow with t_end >= 10.
std::vector<InequalityReport> asymptotics_report(const FlowTrace& trace, const AmbientModel& ambient);

/// Least-squares fit of log((maxH - (n-1)) / t) = log C - beta t over the
/// records with t >= t_from.
struct DecayFit {
  double exponent = 0.0;
  double log_c = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};
DecayFit fit_mean_curvature_decay(const FlowTrace& trace, double t_from);

/// |(I(u + delta F) - I(u - delta F)) / 2 delta - 2 int rho K_ext / H - 2 J|
/// with F = W/H the graph speed.
double didt_identity_check(const GraphState& state, double probe = 1e-4);

/// Right-hand side 2 int rho K_ext / H + 2 J of the dI/dt identity.
double didt_prediction(const GraphState& state);

void print_reports(std::ostream& os, const std::vector<InequalityReport>& reports);
void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports);
bool all_passed(const std::vector<InequalityReport>& reports);

}  // namespace imcf::functionals
