#include "imcf/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "imcf/errors.hpp"

namespace imcf {

CrossSectionGrid::CrossSectionGrid(int dim, int points_per_axis)
    : dim_(dim), m_(points_per_axis), spacing_(2.0 * std::numbers::pi / points_per_axis), size_(1) {
  if (dim < 1 || dim > kMaxGridDim)
    throw InvalidParameter("grid dimension must be in [1, " + std::to_string(kMaxGridDim) + "]");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw InvalidParameter("points per axis must be even and >= 8, got " +
                           std::to_string(points_per_axis));
  for (int a = 0; a < dim; ++a) {
    stride_[a] = size_;
    size_ *= static_cast<std::size_t>(m_);
  }
}

double CrossSectionGrid::cell_volume() const noexcept { return std::pow(spacing_, dim_); }

int CrossSectionGrid::coordinate_index(std::size_t index, int axis) const noexcept {
  return static_cast<int>((index / stride_[axis]) % static_cast<std::size_t>(m_));
}

double CrossSectionGrid::coordinate(std::size_t index, int axis) const noexcept {
  return coordinate_index(index, axis) * spacing_;
}

std::size_t CrossSectionGrid::shift(std::size_t index, int axis, int offset) const noexcept {
  const int c = coordinate_index(index, axis);
  const int shifted = ((c + offset) % m_ + m_) % m_;
  return index + (static_cast<std::ptrdiff_t>(shifted) - c) * static_cast<std::ptrdiff_t>(stride_[axis]);
}

GraphState::GraphState(AmbientModel ambient, std::optional<CrossSectionGrid> grid, Field u, double t)
    : ambient_(ambient), grid_(std::move(grid)), u_(std::move(u)), t_(t) {
  for (double x : u_) {
    if (!std::isfinite(x)) throw InvalidParameter("graph function must be finite");
    if (x < ambient_.s_min())
      throw DomainError("graph height below log 2 for eps=-1");
  }
}

GraphState GraphState::slice(const AmbientModel& ambient, double s0, double t) {
  if (ambient.epsilon() == -1 && !(s0 > ambient.s_min()))
    throw DomainError("eps=-1 slices need s0 > log 2");
  return GraphState(ambient, std::nullopt, Field{s0}, t);
}

GraphState GraphState::on_grid(const AmbientModel& ambient, const CrossSectionGrid& grid, Field u,
                               double t) {
  if (ambient.epsilon() != 0)
    throw InvalidParameter("full-grid mode is only available for eps=0");
  if (grid.dim() != ambient.n() - 1)
    throw InvalidParameter("grid dimension must equal n-1");
  const double torus = std::pow(2.0 * std::numbers::pi, grid.dim());
  if (std::abs(ambient.theta() - torus) > 1e-12 * torus)
    throw InvalidParameter("full-grid mode needs theta = (2 pi)^{n-1}");
  if (u.size() != grid.size()) throw InvalidParameter("field size does not match grid");
  return GraphState(ambient, grid, std::move(u), t);
}

GraphState GraphState::from_function(const AmbientModel& ambient, const CrossSectionGrid& grid,
                                     const std::function<double(std::span<const double>)>& u) {
  Field values(grid.size());
  std::array<double, kMaxGridDim> theta{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int a = 0; a < grid.dim(); ++a) theta[a] = grid.coordinate(i, a);
    values[i] = u(std::span<const double>(theta.data(), grid.dim()));
  }
  return on_grid(ambient, grid, std::move(values));
}

GraphState GraphState::fourier(const AmbientModel& ambient, const CrossSectionGrid& grid, double s0,
                               std::span<const FourierMode> modes) {
  for (const auto& mode : modes)
    if (static_cast<int>(mode.k.size()) != grid.dim())
      throw InvalidParameter("Fourier mode needs " + std::to_string(grid.dim()) + " wave numbers");
  return from_function(ambient, grid, [&](std::span<const double> theta) {
    double u = s0;
    for (const auto& mode : modes) {
      double phase = 0.0;
      for (std::size_t a = 0; a < theta.size(); ++a) phase += mode.k[a] * theta[a];
      u += mode.amp_cos * std::cos(phase) + mode.amp_sin * std::sin(phase);
    }
    return u;
  });
}

const CrossSectionGrid& GraphState::grid() const {
  if (!grid_) throw InvalidParameter("operation needs a full-grid state");
  return *grid_;
}

GraphState GraphState::with_u(Field u, double t) const {
  if (u.size() != u_.size()) throw InvalidParameter("field size mismatch");
  return GraphState(ambient_, grid_, std::move(u), t);
}

double GraphState::quadrature_weight() const noexcept {
  return grid_ ? grid_->cell_volume() : ambient_.theta();
}

double GraphState::integrate(const Field& f) const {
  double sum = 0.0;
  for (double x : f) sum += x;
  return sum * quadrature_weight();
}

namespace surface {
namespace {

constexpr int kMax = kMaxGridDim;

struct Local {
  int d = 0;
  double lambda = 0.0;
  double lambda_dot = 0.0;
  double w = 1.0;
  double h = 0.0;
  double grad2 = 0.0;
  std::array<double, kMax> v{};
  std::array<double, kMax * kMax> vij{};
  std::array<double, kMax * kMax> a{};
};

// Chain-rule derivatives of v from central differences of u.
void local_derivatives(const GraphState& state, std::size_t idx, Local& loc) {
  const auto& grid = state.grid();
  const auto& u = state.u();
  const int d = grid.dim();
  const double dx = grid.spacing();
  const double eps = state.ambient().epsilon();
  const double u0 = u[idx];
  loc.d = d;
  loc.lambda = warped::lambda(u0, static_cast<int>(eps));
  loc.lambda_dot = warped::lambda_dot(u0, static_cast<int>(eps));

  std::array<double, kMax> du{};
  for (int i = 0; i < d; ++i)
    du[i] = (u[grid.shift(idx, i, 1)] - u[grid.shift(idx, i, -1)]) / (2.0 * dx);

  const double inv_l = 1.0 / loc.lambda;
  const double c2 = loc.lambda_dot * inv_l * inv_l;
  double grad2 = 0.0;
  for (int i = 0; i < d; ++i) {
    loc.v[i] = du[i] * inv_l;
    grad2 += loc.v[i] * loc.v[i];
  }
  loc.grad2 = grad2;
  loc.w = std::sqrt(1.0 + grad2);

  for (int i = 0; i < d; ++i) {
    const std::size_t ip = grid.shift(idx, i, 1);
    const std::size_t im = grid.shift(idx, i, -1);
    for (int j = i; j < d; ++j) {
      double uij;
      if (i == j) {
        uij = (u[ip] - 2.0 * u0 + u[im]) / (dx * dx);
      } else {
        uij = (u[grid.shift(ip, j, 1)] - u[grid.shift(ip, j, -1)] - u[grid.shift(im, j, 1)] +
               u[grid.shift(im, j, -1)]) /
              (4.0 * dx * dx);
      }
      const double vij = uij * inv_l - c2 * du[i] * du[j];
      loc.vij[i * d + j] = vij;
      loc.vij[j * d + i] = vij;
    }
  }
}

void local_shape(Local& loc) {
  const int d = loc.d;
  const double inv_wl = 1.0 / (loc.w * loc.lambda);
  const double inv_w2 = 1.0 / (loc.w * loc.w);
  double trace = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double contraction = 0.0;
      for (int k = 0; k < d; ++k) {
        const double htilde = (i == k ? 1.0 : 0.0) - loc.v[i] * loc.v[k] * inv_w2;
        contraction += htilde * loc.vij[k * d + j];
      }
      loc.a[i * d + j] = (i == j ? loc.lambda_dot * inv_wl : 0.0) - contraction * inv_wl;
    }
    trace += loc.a[i * d + i];
  }
  loc.h = trace;
}

Local local_geometry(const GraphState& state, std::size_t idx) {
  Local loc;
  local_derivatives(state, idx, loc);
  local_shape(loc);
  return loc;
}

double shape_norm2(const Local& loc) {
  double s = 0.0;
  for (int i = 0; i < loc.d; ++i)
    for (int j = 0; j < loc.d; ++j) s += loc.a[i * loc.d + j] * loc.a[j * loc.d + i];
  return s;
}

double local_umbilicity(const Local& loc) {
  const double mean = loc.h / loc.d;
  double worst = 0.0;
  for (int i = 0; i < loc.d; ++i)
    for (int j = 0; j < loc.d; ++j)
      worst = std::max(worst, std::abs(loc.a[i * loc.d + j] - (i == j ? mean : 0.0)));
  return worst;
}

struct SliceValues {
  double lambda;
  double lambda_dot;
  double h;
};

SliceValues slice_values(const GraphState& state) {
  const int eps = state.ambient().epsilon();
  const double s = state.u()[0];
  const double l = warped::lambda(s, eps);
  const double ld = warped::lambda_dot(s, eps);
  return {l, ld, (state.ambient().n() - 1) * ld / l};
}

template <class F>
Field per_point(const GraphState& state, F&& f) {
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(local_geometry(state, i));
  return out;
}

}  // namespace

VDerivatives v_derivatives(const GraphState& state) {
  const auto& grid = state.grid();
  const int d = grid.dim();
  VDerivatives out{Field(grid.size() * d), Field(grid.size() * d * d)};
  Local loc;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    local_derivatives(state, idx, loc);
    for (int i = 0; i < d; ++i) {
      out.first[idx * d + i] = loc.v[i];
      for (int j = 0; j < d; ++j) out.second[(idx * d + i) * d + j] = loc.vij[i * d + j];
    }
  }
  return out;
}

Field w_factor(const GraphState& state) {
  if (state.symmetric()) return Field{1.0};
  Field out(state.size());
  Local loc;
  for (std::size_t i = 0; i < out.size(); ++i) {
    local_derivatives(state, i, loc);
    out[i] = loc.w;
  }
  return out;
}

Field mean_curvature(const GraphState& state) {
  if (state.symmetric()) return Field{slice_values(state).h};
  return per_point(state, [](const Local& l) { return l.h; });
}

Field shape_operator(const GraphState& state) {
  const auto& grid = state.grid();
  const int d = grid.dim();
  Field out(grid.size() * d * d);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Local loc = local_geometry(state, idx);
    std::copy_n(loc.a.begin(), d * d, out.begin() + idx * d * d);
  }
  return out;
}

Field umbilicity(const GraphState& state) {
  if (state.symmetric()) return Field{0.0};
  return per_point(state, local_umbilicity);
}

Field support_function(const GraphState& state) {
  if (state.symmetric()) return Field{slice_values(state).lambda};
  Field out(state.size());
  Local loc;
  for (std::size_t i = 0; i < out.size(); ++i) {
    local_derivatives(state, i, loc);
    out[i] = loc.lambda / loc.w;
  }
  return out;
}

Field area_element(const GraphState& state) {
  const int n = state.ambient().n();
  if (state.symmetric()) return Field{std::pow(slice_values(state).lambda, n - 1)};
  Field out(state.size());
  Local loc;
  for (std::size_t i = 0; i < out.size(); ++i) {
    local_derivatives(state, i, loc);
    out[i] = std::pow(loc.lambda, n - 1) * loc.w;
  }
  return out;
}

double area(const GraphState& state) { return state.integrate(area_element(state)); }

Field laplace_beltrami(const GraphState& state, const Field& f) {
  const auto& grid = state.grid();
  if (f.size() != grid.size()) throw InvalidParameter("field size does not match grid");
  const int d = grid.dim();
  const std::size_t size = grid.size();
  const double dx = grid.spacing();

  // sqrt(eta) eta^{ij} = lambda^{d-2} W (delta_ij - v_i v_j / W^2).
  Field coeff(size * d * d);
  Field sqrt_eta(size);
  Local loc;
  for (std::size_t idx = 0; idx < size; ++idx) {
    local_derivatives(state, idx, loc);
    sqrt_eta[idx] = std::pow(loc.lambda, d) * loc.w;
    const double scale = std::pow(loc.lambda, d - 2) * loc.w;
    const double inv_w2 = 1.0 / (loc.w * loc.w);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        coeff[(idx * d + i) * d + j] =
            scale * ((i == j ? 1.0 : 0.0) - loc.v[i] * loc.v[j] * inv_w2);
  }
  auto c = [&](std::size_t idx, int i, int j) { return coeff[(idx * d + i) * d + j]; };

  Field out(size);
  for (std::size_t idx = 0; idx < size; ++idx) {
    double div = 0.0;
    for (int i = 0; i < d; ++i) {
      const std::size_t ip = grid.shift(idx, i, 1);
      const std::size_t im = grid.shift(idx, i, -1);
      const double c_plus = 0.5 * (c(idx, i, i) + c(ip, i, i));
      const double c_minus = 0.5 * (c(idx, i, i) + c(im, i, i));
      div += (c_plus * (f[ip] - f[idx]) - c_minus * (f[idx] - f[im])) / (dx * dx);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const double flux_plus = c(ip, i, j) * (f[grid.shift(ip, j, 1)] - f[grid.shift(ip, j, -1)]);
        const double flux_minus = c(im, i, j) * (f[grid.shift(im, j, 1)] - f[grid.shift(im, j, -1)]);
        div += (flux_plus - flux_minus) / (4.0 * dx * dx);
      }
    }
    out[idx] = div / sqrt_eta[idx];
  }
  return out;
}

double minkowski_residual(const GraphState& state) {
  const int n = state.ambient().n();
  if (state.symmetric()) {
    const auto s = slice_values(state);
    return std::abs(-(n - 1) * s.lambda_dot + s.h * s.lambda);
  }
  const auto geo = evaluate(state);
  const Field lap = laplace_beltrami(state, geo.lambda_dot);
  double worst = 0.0;
  for (std::size_t i = 0; i < lap.size(); ++i) {
    const double r = lap[i] - (n - 1) * geo.lambda_dot[i] + geo.mean_curvature[i] * geo.support[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Field extrinsic_scalar(const GraphState& state) {
  if (state.symmetric()) {
    const auto s = slice_values(state);
    const int d = state.ambient().n() - 1;
    const double k = s.lambda_dot / s.lambda;
    return Field{0.5 * d * (d - 1) * k * k};
  }
  return per_point(state, [](const Local& l) { return 0.5 * (l.h * l.h - shape_norm2(l)); });
}

SurfaceGeometry evaluate(const GraphState& state) {
  const int n = state.ambient().n();
  const std::size_t size = state.size();
  SurfaceGeometry g;
  for (Field* f : {&g.lambda, &g.lambda_dot, &g.w, &g.mean_curvature, &g.support, &g.area_density,
                   &g.shape_norm2, &g.umbilicity, &g.grad_v})
    f->assign(size, 0.0);

  if (state.symmetric()) {
    const auto s = slice_values(state);
    g.lambda[0] = s.lambda;
    g.lambda_dot[0] = s.lambda_dot;
    g.w[0] = 1.0;
    g.mean_curvature[0] = s.h;
    g.support[0] = s.lambda;
    g.area_density[0] = std::pow(s.lambda, n - 1);
    g.shape_norm2[0] = s.h * s.h / (n - 1);
    return g;
  }

  for (std::size_t i = 0; i < size; ++i) {
    const Local loc = local_geometry(state, i);
    g.lambda[i] = loc.lambda;
    g.lambda_dot[i] = loc.lambda_dot;
    g.w[i] = loc.w;
    g.mean_curvature[i] = loc.h;
    g.support[i] = loc.lambda / loc.w;
    g.area_density[i] = std::pow(loc.lambda, n - 1) * loc.w;
    g.shape_norm2[i] = shape_norm2(loc);
    g.umbilicity[i] = local_umbilicity(loc);
    g.grad_v[i] = std::sqrt(loc.grad2);
  }
  return g;
}

void write_field_csv(std::ostream& os, const CrossSectionGrid& grid, const Field& f) {
  if (f.size() != grid.size()) throw InvalidParameter("field size does not match grid");
  const auto old = os.precision(17);
  const auto m = static_cast<std::size_t>(grid.points_per_axis());
  for (std::size_t row = 0; row < grid.size() / m; ++row) {
    for (std::size_t col = 0; col < m; ++col) {
      if (col) os << ',';
      os << f[row * m + col];
    }
    os << '\n';
  }
  os.precision(old);
}

}  // namespace surface
}  // namespace imcf
