#include "imcf/kottler.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "imcf/errors.hpp"
#include "quadrature.hpp"

namespace imcf::kottler {
namespace {

void require_positive_mass(const KottlerParams& p) {
  if (!(p.m > 0.0))
    throw InvalidParameter("horizon operations need m > 0, got m=" + std::to_string(p.m));
}

double f_prime(double r, const KottlerParams& p) {
  const int n = p.ambient.n();
  return n * std::pow(r, n - 1) + p.ambient.epsilon() * (n - 2) * std::pow(r, n - 3);
}

// f(r_h + d) / d in cancellation-free form:
// (a + d)^k - a^k = d * sum_{j<k} (a + d)^j a^{k-1-j}.
double f_quotient(double d, double r_h, const KottlerParams& p) {
  const int n = p.ambient.n();
  const double r = r_h + d;
  auto diff_quotient = [&](int k) {
    double sum = 0.0;
    double rp = 1.0;
    for (int j = 0; j < k; ++j) {
      sum += rp * std::pow(r_h, k - 1 - j);
      rp *= r;
    }
    return sum;
  };
  return diff_quotient(n) + p.ambient.epsilon() * diff_quotient(n - 2);
}

}  // namespace

double f_eval(double r, const KottlerParams& p) {
  const int n = p.ambient.n();
  return std::pow(r, n) + p.ambient.epsilon() * std::pow(r, n - 2) - 2.0 * p.m;
}

double horizon_radius(const KottlerParams& p) {
  require_positive_mass(p);
  const int n = p.ambient.n();
  const double c = std::pow(2.0 * p.m, 1.0 / n);
  double lo = std::max(p.ambient.epsilon() == -1 ? 1.0 : 0.0, 0.5 * c);
  double hi = c + 2.0;
  if (f_eval(lo, p) > 0.0 || f_eval(hi, p) < 0.0)
    throw NumericalFailure("horizon bracket does not straddle the root");

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (f_eval(mid, p) > 0.0 ? hi : lo) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fr = f_eval(r, p);
    if (fr == 0.0) break;
    (fr > 0.0 ? hi : lo) = r;
    double next = r - fr / f_prime(r, p);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 4.0 * std::numeric_limits<double>::epsilon() * r) {
      r = next;
      break;
    }
    r = next;
  }
  if (std::abs(f_eval(r, p)) > 1e-12 * std::max(1.0, 2.0 * p.m))
    throw NumericalFailure("horizon root did not converge");
  return r;
}

double rho_m(double r, const KottlerParams& p) {
  const int n = p.ambient.n();
  if (p.m > 0.0) {
    const double r_h = horizon_radius(p);
    if (r < r_h) throw DomainError("rho_m undefined below the horizon r_h=" + std::to_string(r_h));
    if (r == r_h) return 0.0;
    // f(r) / r^{n-2} without cancellation near the horizon.
    const double d = r - r_h;
    return std::sqrt(d * f_quotient(d, r_h, p) / std::pow(r, n - 2));
  }
  const double q = r * r + p.ambient.epsilon() - 2.0 * p.m / std::pow(r, n - 2);
  if (!(r > 0.0) || q < 0.0) throw DomainError("rho_m undefined at r=" + std::to_string(r));
  return std::sqrt(q);
}

double critical_mass(int n) {
  if (n < 3) throw InvalidParameter("critical_mass needs n >= 3");
  return -std::pow(n - 2.0, 0.5 * (n - 2)) / std::pow(static_cast<double>(n), 0.5 * n);
}

double mass_from_area(double area, const AmbientModel& ambient) {
  if (!(area > 0.0)) throw InvalidParameter("area must be positive");
  const int n = ambient.n();
  const double a_hat = area / ambient.theta();
  return 0.5 * (std::pow(a_hat, static_cast<double>(n) / (n - 1)) +
                ambient.epsilon() * std::pow(a_hat, static_cast<double>(n - 2) / (n - 1)));
}

double haw_bound(double area, int genus) {
  if (genus < 1) throw InvalidParameter("genus must be >= 1, got " + std::to_string(genus));
  if (!(area > 0.0)) throw InvalidParameter("area must be positive");
  const double four_pi = 4.0 * std::numbers::pi;
  const double theta = genus == 1 ? four_pi : four_pi * (genus - 1);
  return std::pow(four_pi / theta, 1.5) * std::sqrt(area / (4.0 * four_pi)) *
         (1.0 - genus + area / four_pi);
}

SectionalCurvatures sectional_curvatures(double r, const KottlerParams& p) {
  const int n = p.ambient.n();
  if (p.m > 0.0 && !(r > horizon_radius(p)))
    throw DomainError("sectional curvatures need r > r_h");
  if (!(r > 0.0)) throw DomainError("sectional curvatures need r > 0");
  const double mr = p.m / std::pow(r, n);
  return {-1.0 - (n - 2) * mr, -1.0 + 2.0 * mr};
}

double scalar_curvature(const SectionalCurvatures& k, int n) {
  return 2.0 * ((n - 1) * k.radial + 0.5 * (n - 1) * (n - 2) * k.tangential);
}

double embedding_slope(double r, const KottlerParams& p) {
  if (p.m == 0.0) return 0.0;
  require_positive_mass(p);
  const int n = p.ambient.n();
  const double rm = rho_m(r, p);
  if (rm == 0.0) return std::numeric_limits<double>::infinity();
  const double rho2 = r * r + p.ambient.epsilon();
  return std::sqrt(2.0 * p.m / std::pow(r, n - 2)) / (rm * rho2);
}

std::vector<ProfileRow> embedding_profile(const KottlerParams& p, double r_max, double step) {
  if (!(step > 0.0)) throw InvalidParameter("profile step must be positive");
  std::vector<ProfileRow> rows;

  if (p.m == 0.0) {
    const double r0 = p.ambient.epsilon() == -1 ? 1.0 : step;
    if (!(r_max > r0)) throw InvalidParameter("r_max must exceed the start radius");
    for (std::size_t k = 0;; ++k) {
      const double r = std::min(r0 + k * step, r_max);
      rows.push_back({r, 0.0, 0.0});
      if (r >= r_max) break;
    }
    return rows;
  }

  require_positive_mass(p);
  const double r_h = horizon_radius(p);
  if (!(r_max > r_h)) throw InvalidParameter("r_max must exceed the horizon radius");
  const double eps = p.ambient.epsilon();

  // With r = r_h + x^2 the slope times dr/dx is smooth:
  //   2x u'(r) = 2 sqrt(2m / q(x^2)) / (r^2 + eps),  q(d) = f(r_h + d) / d.
  auto integrand = [&](double x) {
    const double d = x * x;
    const double r = r_h + d;
    return 2.0 * std::sqrt(2.0 * p.m / f_quotient(d, r_h, p)) / (r * r + eps);
  };

  rows.push_back({r_h, 0.0, std::numeric_limits<double>::infinity()});
  double u = 0.0;
  double r_prev = r_h;
  for (std::size_t k = 1;; ++k) {
    const double r = std::min(r_h + k * step, r_max);
    u += detail::gauss_legendre(integrand, std::sqrt(r_prev - r_h), std::sqrt(r - r_h));
    rows.push_back({r, u, embedding_slope(r, p)});
    r_prev = r;
    if (r >= r_max) break;
  }
  if (!std::isfinite(u)) throw NumericalFailure("embedding profile integration diverged");
  return rows;
}

double embedding_metric_residual(const ProfileRow& row, const KottlerParams& p) {
  const double rho2 = row.r * row.r + p.ambient.epsilon();
  const double rm = rho_m(row.r, p);
  const double rm2 = rm * rm;
  const double lhs = rho2 * row.dudr * row.dudr + 1.0 / rho2;
  return std::abs(lhs - 1.0 / rm2) * rm2;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  const auto old = os.precision(17);
  os << "r,u,dudr\n";
  for (const auto& row : rows) os << row.r << ',' << row.u << ',' << row.dudr << '\n';
  os.precision(old);
}

double kottler_boundary_mass(const KottlerParams& p) {
  const double r_h = horizon_radius(p);
  const int n = p.ambient.n();
  const int eps = p.ambient.epsilon();
  const double rho = warped::rho(r_h, eps);
  const double mean_curvature = (n - 1) * rho / r_h;
  // The integrand is constant on the horizon slice; midpoint cells over the
  // cross-section, each carrying its share of theta * r_h^{n-1}.
  constexpr int kCells = 16;
  const double cell_area = p.ambient.theta() * std::pow(r_h, n - 1) / kCells;
  double integral = 0.0;
  for (int c = 0; c < kCells; ++c) integral += rho * mean_curvature * cell_area;
  return p.ambient.c_n() * integral;
}

double staticity_residual(double r, const KottlerParams& p) {
  const int n = p.ambient.n();
  const double h = 1e-3 * r;
  auto psi = [&](double x) { return rho_m(x, p); };
  // Fourth-order central first derivative.
  auto d1 = [h](auto&& f, double x) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
  };
  // psi psi' = (psi^2)'/2 stays smooth up to the horizon.
  auto psi2 = [&](double x) { return f_eval(x, p) / std::pow(x, n - 2); };
  auto flux = [&](double x) { return 0.5 * std::pow(x, n - 1) * d1(psi2, x); };
  const double laplacian = psi(r) / std::pow(r, n - 1) * d1(flux, r);
  const double scalar = -static_cast<double>(n) * (n - 1);
  return (n - 1) * laplacian + psi(r) * scalar;
}

}  // namespace imcf::kottler
