#pragma once

// Mass of radially symmetric asymptotically locally hyperbolic metrics
//
//   g = dr^2 / psi(r)^2 + r^2 h,
//
// through the flux integral at infinity and through the graph formula
// (bulk scalar-curvature term plus horizon boundary term).

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "imcf/kottler.hpp"
#include "imcf/warped_geometry.hpp"

namespace imcf::mass {

/// psi^2 and its radial derivative on [r_min, inf).
struct RadialMetricProfile {
  AmbientModel ambient;
  std::function<double(double)> psi2;
  std::function<double(double)> dpsi2;
  double r_min = 0.0;

  /// g_{eps,m}; r_min is the horizon (or the reference domain start for m = 0).
  static RadialMetricProfile kottler(const kottler::KottlerParams& p);
  /// The reference metric, psi^2 = r^2 + eps.
  static RadialMetricProfile reference(const AmbientModel& ambient);
  /// Piecewise-cubic Hermite interpolation of sampled (r, psi^2) rows, with
  /// slopes from finite differences of the samples.
  static RadialMetricProfile from_samples(const AmbientModel& ambient, std::vector<double> r,
                                          std::vector<double> psi2);

  double operator()(double r) const { return psi2(r); }
};

/// Limit of the flux integral truncated at N_r, for the radial deviation
/// e_rr = 1/psi^2 - 1/rho^2 from the reference metric. For this e the flux
/// reduces to r^{n-2} rho^2 E / 2 with E = rho^2 e_rr.
/// Throws DomainError outside the profile domain and NumericalFailure when
/// |E| >= 0.5 (outside the linearized range).
double flux_mass_at(const RadialMetricProfile& profile, double r);

struct Extrapolation {
  double value = 0.0;
  double exponent = 0.0;  ///< fitted decay power of the leading correction
  std::vector<double> samples;
};

/// Evaluates the flux at r, q r, q^2 r and extrapolates assuming a single
/// power-law correction with fitted exponent.
Extrapolation extrapolate_flux_mass(const RadialMetricProfile& profile, double r, double q = 2.0);

/// Vertical component <d_tau, N> of the unit normal of the graph tau = u(r)
/// inside (R x P_eps, rho^2 dtau^2 + g_eps): rho / sqrt(1 + rho^4 u'^2).
double theta_graph(double dudr, double r, int epsilon);

/// Scalar curvature of dr^2/psi^2 + r^2 h:
/// (n-1) [ (n-2)(eps - psi^2)/r^2 - (psi^2)'/r ].
double scalar_curvature_symmetric(const RadialMetricProfile& profile, double r);

/// Radially symmetric graph u(r) over [r0, inf) meeting the horizontal slice
/// orthogonally at r0 (u' -> inf there).
struct SymmetricGraph {
  AmbientModel ambient;
  double r0;
  std::function<double(double)> dudr;
  std::function<double(double)> d2udr2;
};

/// Induced metric of a symmetric graph, psi^2 = 1 / (1/rho^2 + rho^2 u'^2).
RadialMetricProfile induced_profile(const SymmetricGraph& graph);

/// The symmetric graph whose induced metric is `profile`; needs psi <= rho.
SymmetricGraph graph_of_profile(const RadialMetricProfile& profile);

struct MassDecomposition {
  double bulk = 0.0;
  double boundary = 0.0;
  double total = 0.0;
};

/// bulk = c_n int Theta (R_g + n(n-1)) dM over [r0, r_cut] and
/// boundary = c_n int_Sigma rho H with H = (n-1) rho(r0) / r0.
MassDecomposition graph_mass_formula(const SymmetricGraph& graph, double r_cut = 1e3);

struct PenroseCertificate {
  double mass = 0.0;
  double area = 0.0;
  double anorm = 0.0;
  double bound = 0.0;
  double deficit = 0.0;
  std::optional<double> genus_bound;
  bool effective = true;
  bool passed = false;
  std::string annotation;
};

/// mass - (A^{n/(n-1)} + eps A^{(n-2)/(n-1)}) / 2 for a horizon of the given
/// area. Passes when the deficit is >= -tolerance. For n = 3 with a declared
/// genus the genus form of the bound is reported as well.
PenroseCertificate penrose_certificate(double area, const AmbientModel& ambient, double total_mass,
                                       double tolerance = 1e-6);

void print_certificate(std::ostream& os, const PenroseCertificate& cert);

}  // namespace imcf::mass
