#pragma once

// Closed-form scalar functions of the locally hyperbolic warped products
//
//   g_eps = dr^2 / rho_eps(r)^2 + r^2 h = ds^2 + lambda_eps(s)^2 h,
//
// with eps in {-1, 0} and (N, h) a closed space form of curvature eps.

#include <optional>

namespace imcf {

/// Ambient stage P_eps: dimension n, curvature sign eps of the cross-section
/// and its area theta = area(N, h).
class AmbientModel {
 public:
  AmbientModel(int n, int epsilon, double theta, std::optional<int> genus = std::nullopt);

  /// eps = 0 over the flat torus [0, 2pi)^{n-1}; theta = (2pi)^{n-1}.
  static AmbientModel flat_torus(int n);
  /// n = 3 with a genus-gamma horizon. gamma >= 2 gives eps = -1 and
  /// theta = 4pi(gamma - 1); gamma = 1 gives eps = 0 normalized to theta = 4pi.
  static AmbientModel surface_of_genus(int genus);

  int n() const noexcept { return n_; }
  int epsilon() const noexcept { return epsilon_; }
  double theta() const noexcept { return theta_; }
  std::optional<int> genus() const noexcept { return genus_; }

  /// c_n = 1 / (2 (n-1) theta).
  double c_n() const noexcept { return 1.0 / (2.0 * (n_ - 1) * theta_); }

  /// Smallest admissible s: -inf for eps = 0, log 2 for eps = -1.
  double s_min() const noexcept;

 private:
  int n_;
  int epsilon_;
  double theta_;
  std::optional<int> genus_;
};

namespace warped {

void check_epsilon(int epsilon);

/// lambda_eps(s): e^s (eps = 0) or e^s / 4 + e^{-s} (eps = -1).
double lambda(double s, int epsilon);
double lambda_dot(double s, int epsilon);
double lambda_ddot(double s, int epsilon);

/// rho_eps(r) = sqrt(r^2 + eps).
double rho(double r, int epsilon);

/// Arc-length coordinate s with ds = dr / rho_eps(r).
double s_from_r(double r, int epsilon);
/// Inverse of s_from_r; equals lambda(s).
double r_from_s(double s, int epsilon);

}  // namespace warped
}  // namespace imcf
