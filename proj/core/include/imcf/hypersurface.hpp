#pragma once

// Discrete geometry of star-shaped radial graphs theta -> (u(theta), theta)
// in P_eps = (ds^2 + lambda(s)^2 h).
//
// Two representations are supported:
//  * full grid: u sampled on the flat torus [0, 2pi)^{n-1} (eps = 0 only),
//    derivatives by second-order central differences;
//  * symmetric: u is a single number (a slice); every quantity has its closed
//    slice form. This is the only representation available for eps = -1.

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "imcf/warped_geometry.hpp"

namespace imcf {

using Field = std::vector<double>;

/// Largest cross-section dimension n-1 supported by the full-grid kernels.
inline constexpr int kMaxGridDim = 6;

/// Uniform periodic grid on [0, 2pi)^dim, theta_1 the fastest-varying axis.
class CrossSectionGrid {
 public:
  CrossSectionGrid(int dim, int points_per_axis);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return m_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return size_; }
  double cell_volume() const noexcept;

  /// Periodic neighbour of `index` displaced by `offset` cells along `axis`.
  std::size_t shift(std::size_t index, int axis, int offset) const noexcept;
  int coordinate_index(std::size_t index, int axis) const noexcept;
  double coordinate(std::size_t index, int axis) const noexcept;

 private:
  int dim_;
  int m_;
  double spacing_;
  std::size_t size_;
  std::array<std::size_t, kMaxGridDim> stride_{};
};

/// One Fourier term amp_cos cos(k.theta) + amp_sin sin(k.theta).
struct FourierMode {
  std::vector<int> k;
  double amp_cos = 0.0;
  double amp_sin = 0.0;
};

class GraphState {
 public:
  /// Slice u = s0 in symmetric mode.
  static GraphState slice(const AmbientModel& ambient, double s0, double t = 0.0);
  /// Full-grid state; the ambient must be the flat torus of matching dimension.
  static GraphState on_grid(const AmbientModel& ambient, const CrossSectionGrid& grid, Field u,
                            double t = 0.0);
  static GraphState from_function(const AmbientModel& ambient, const CrossSectionGrid& grid,
                                  const std::function<double(std::span<const double>)>& u);
  /// u = s0 + sum of Fourier terms; each mode carries n-1 wave numbers.
  static GraphState fourier(const AmbientModel& ambient, const CrossSectionGrid& grid, double s0,
                            std::span<const FourierMode> modes);

  bool symmetric() const noexcept { return !grid_.has_value(); }
  const AmbientModel& ambient() const noexcept { return ambient_; }
  const CrossSectionGrid& grid() const;
  const Field& u() const noexcept { return u_; }
  double t() const noexcept { return t_; }
  std::size_t size() const noexcept { return u_.size(); }

  /// Same representation, new heights and time.
  GraphState with_u(Field u, double t) const;

  /// Weight of one sample in cross-section integrals: dtheta^{n-1} on the
  /// grid, theta for a slice.
  double quadrature_weight() const noexcept;
  /// Deterministic plain sum times quadrature_weight().
  double integrate(const Field& f) const;

  /// Spacing of the grid, or 0 in symmetric mode.
  double spacing() const noexcept { return grid_ ? grid_->spacing() : 0.0; }

 private:
  GraphState(AmbientModel ambient, std::optional<CrossSectionGrid> grid, Field u, double t);

  AmbientModel ambient_;
  std::optional<CrossSectionGrid> grid_;
  Field u_;
  double t_;
};

namespace surface {

/// Derivatives of v = phi(u), phi' = 1/lambda, by the chain rule.
struct VDerivatives {
  Field first;   ///< size N * d, [point][i]
  Field second;  ///< size N * d * d, [point][i][j]
};

VDerivatives v_derivatives(const GraphState& state);

/// W = sqrt(1 + |Dv|_h^2).
Field w_factor(const GraphState& state);

/// H = (n-1) lambda'/(W lambda) - htilde^{ik} v_ki / (W lambda), inward normal.
Field mean_curvature(const GraphState& state);

/// Mixed shape operator a^i_j per point, stored [point][i][j]. Full grid only.
Field shape_operator(const GraphState& state);

/// Largest entry of |a - H/(n-1) Id| per point.
Field umbilicity(const GraphState& state);

/// p = lambda(u) / W.
Field support_function(const GraphState& state);

/// sqrt(det eta) = lambda^{n-1} W per unit h-volume.
Field area_element(const GraphState& state);
double area(const GraphState& state);

/// Divergence-form Laplace-Beltrami operator of the induced metric.
Field laplace_beltrami(const GraphState& state, const Field& f);

/// max |Lap(rho) - (n-1) rho + H p| with rho = lambda'(u).
double minkowski_residual(const GraphState& state);

/// Second elementary symmetric function of the principal curvatures,
/// (H^2 - |a|^2) / 2.
Field extrinsic_scalar(const GraphState& state);

/// Pointwise quantities shared by the solver and the functionals.
struct SurfaceGeometry {
  Field lambda;
  Field lambda_dot;
  Field w;
  Field mean_curvature;
  Field support;
  Field area_density;
  Field shape_norm2;  ///< |a|^2 = tr(a^2)
  Field umbilicity;
  Field grad_v;       ///< |Dv|_h
};

SurfaceGeometry evaluate(const GraphState& state);

/// Writes a grid field as a CSV matrix: one row per theta_1 line, theta_1
/// fastest, remaining axes in row-major order.
void write_field_csv(std::ostream& os, const CrossSectionGrid& grid, const Field& f);

}  // namespace surface
}  // namespace imcf
