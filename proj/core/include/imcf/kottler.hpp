#pragma once

// The Kottler black-hole family
//
//   g_{eps,m} = dr^2 / rho_{eps,m}(r)^2 + r^2 h,
//   rho_{eps,m}(r) = sqrt(r^2 + eps - 2m / r^{n-2}),
//
// its horizon, mass-area algebra and graph realization inside the Riemannian
// cone (R x P_eps, rho_eps^2 dtau^2 + g_eps).

#include <iosfwd>
#include <vector>

#include "imcf/warped_geometry.hpp"

namespace imcf::kottler {

struct KottlerParams {
  AmbientModel ambient;
  double m;
};

/// f(r) = r^n + eps r^{n-2} - 2m, evaluated as written. Accepts any real m.
double f_eval(double r, const KottlerParams& p);

/// Unique positive zero of f. Throws InvalidParameter if m <= 0.
double horizon_radius(const KottlerParams& p);

/// rho_{eps,m}(r); zero at the horizon. Throws DomainError below the horizon.
double rho_m(double r, const KottlerParams& p);

/// Lower end of the eps = -1 static mass range, -(n-2)^{(n-2)/2} / n^{n/2}.
double critical_mass(int n);

/// m = (A^{n/(n-1)} + eps A^{(n-2)/(n-1)}) / 2 with A = area / theta.
/// The same expression is the Penrose-type lower bound for a horizon of that area.
double mass_from_area(double area, const AmbientModel& ambient);
inline double penrose_bound(double area, const AmbientModel& ambient) {
  return mass_from_area(area, ambient);
}

/// Genus form of the n = 3 bound,
/// (4pi/theta)^{3/2} sqrt(area/16pi) (1 - gamma + area/4pi),
/// with theta = 4pi(gamma-1) for gamma >= 2 and theta = 4pi for the torus.
double haw_bound(double area, int genus);

struct SectionalCurvatures {
  double radial;      ///< K(d_r, d_theta_i)
  double tangential;  ///< K(d_theta_i, d_theta_j)
};

/// Sectional curvatures of g_{eps,m} for r > r_h. The tangential one decays
/// like r^{-n}; that is the exponent compatible with R = -n(n-1).
SectionalCurvatures sectional_curvatures(double r, const KottlerParams& p);

/// 2 [ (n-1) K_radial + (n-1)(n-2)/2 K_tangential ].
double scalar_curvature(const SectionalCurvatures& k, int n);

/// Slope du/dr of the graph realization, sqrt(1/rho_m^2 - 1/rho^2) / rho.
/// Diverges like (r - r_h)^{-1/2} at the horizon.
double embedding_slope(double r, const KottlerParams& p);

struct ProfileRow {
  double r;
  double u;
  double dudr;
};

/// Graph function u with u(r_h) = 0 sampled on r_h, r_h + step, ..., r_max.
/// The first row carries dudr = +inf. For m = 0 the profile is identically
/// zero and starts at r = 1 (eps = -1) or r = step (eps = 0).
std::vector<ProfileRow> embedding_profile(const KottlerParams& p, double r_max, double step);

/// |rho^2 u'^2 + 1/rho^2 - 1/rho_m^2| * rho_m^2, the relative defect of the
/// induced radial metric coefficient.
double embedding_metric_residual(const ProfileRow& row, const KottlerParams& p);

/// Writes `r,u,dudr` rows in full double precision.
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows);

/// c_n times the boundary integral of rho_eps H over the horizon slice, by
/// quadrature over the cross-section. Equals m.
double kottler_boundary_mass(const KottlerParams& p);

/// Traced staticity identity (n-1) Lap(rho_m) + rho_m R with R = -n(n-1),
/// the Laplacian taken in g_{eps,m} by nested fourth-order finite differences.
double staticity_residual(double r, const KottlerParams& p);

}  // namespace imcf::kottler
