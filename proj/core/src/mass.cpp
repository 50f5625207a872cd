#include "imcf/mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "imcf/errors.hpp"
#include "quadrature.hpp"

namespace imcf::mass {
namespace {

double rho2(double r, int eps) { return r * r + eps; }

}  // namespace

RadialMetricProfile RadialMetricProfile::kottler(const kottler::KottlerParams& p) {
  const int n = p.ambient.n();
  const int eps = p.ambient.epsilon();
  const double m = p.m;
  RadialMetricProfile prof{p.ambient, {}, {}, 0.0};
  if (m > 0.0) {
    prof.r_min = kottler::horizon_radius(p);
    prof.psi2 = [p](double r) {
      const double rm = kottler::rho_m(r, p);
      return rm * rm;
    };
  } else {
    prof.r_min = eps == -1 ? 1.0 : 0.0;
    prof.psi2 = [n, eps, m](double r) { return r * r + eps - 2.0 * m / std::pow(r, n - 2); };
  }
  prof.dpsi2 = [n, m](double r) { return 2.0 * r + 2.0 * (n - 2) * m / std::pow(r, n - 1); };
  return prof;
}

RadialMetricProfile RadialMetricProfile::reference(const AmbientModel& ambient) {
  return kottler({ambient, 0.0});
}

RadialMetricProfile RadialMetricProfile::from_samples(const AmbientModel& ambient,
                                                      std::vector<double> r,
                                                      std::vector<double> psi2) {
  if (r.size() != psi2.size() || r.size() < 3)
    throw InvalidParameter("sampled profile needs at least 3 matching (r, psi2) rows");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw InvalidParameter("sampled profile radii must increase");

  // Slopes: one-sided at the ends, three-point non-uniform in the interior.
  std::vector<double> slope(r.size());
  const std::size_t last = r.size() - 1;
  slope[0] = (psi2[1] - psi2[0]) / (r[1] - r[0]);
  slope[last] = (psi2[last] - psi2[last - 1]) / (r[last] - r[last - 1]);
  for (std::size_t i = 1; i < last; ++i) {
    const double h0 = r[i] - r[i - 1], h1 = r[i + 1] - r[i];
    slope[i] = (h0 * h0 * (psi2[i + 1] - psi2[i]) + h1 * h1 * (psi2[i] - psi2[i - 1])) /
               (h0 * h1 * (h0 + h1));
  }

  struct Table {
    std::vector<double> r, f, df;
  };
  auto table = std::make_shared<Table>(Table{std::move(r), std::move(psi2), std::move(slope)});
  auto locate = [table](double x) {
    const auto& rs = table->r;
    if (x < rs.front() || x > rs.back())
      throw DomainError("radius " + std::to_string(x) + " outside the sampled profile");
    auto it = std::upper_bound(rs.begin(), rs.end(), x);
    std::size_t i = it == rs.end() ? rs.size() - 2 : static_cast<std::size_t>(it - rs.begin()) - 1;
    return std::min(i, rs.size() - 2);
  };

  RadialMetricProfile prof{ambient, {}, {}, table->r.front()};
  prof.psi2 = [table, locate](double x) {
    const std::size_t i = locate(x);
    const double h = table->r[i + 1] - table->r[i];
    const double s = (x - table->r[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * table->f[i] + h10 * h * table->df[i] + h01 * table->f[i + 1] +
           h11 * h * table->df[i + 1];
  };
  prof.dpsi2 = [table, locate](double x) {
    const std::size_t i = locate(x);
    const double h = table->r[i + 1] - table->r[i];
    const double s = (x - table->r[i]) / h;
    const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
    return (d00 * table->f[i] + d01 * table->f[i + 1]) / h + d10 * table->df[i] +
           d11 * table->df[i + 1];
  };
  return prof;
}

double flux_mass_at(const RadialMetricProfile& profile, double r) {
  const int n = profile.ambient.n();
  const int eps = profile.ambient.epsilon();
  if (!(r > profile.r_min)) throw DomainError("flux radius must lie inside the profile domain");
  const double psi2 = profile.psi2(r);
  if (!(psi2 > 0.0)) throw DomainError("psi^2 must be positive at the flux radius");
  const double reference = rho2(r, eps);
  // E = rho^2 e_rr = (rho^2 - psi^2) / psi^2.
  const double e = (reference - psi2) / psi2;
  if (std::abs(e) >= 0.5)
    throw NumericalFailure("metric deviation outside the linearized range at r=" + std::to_string(r));
  return 0.5 * std::pow(r, n - 2) * reference * e;
}

Extrapolation extrapolate_flux_mass(const RadialMetricProfile& profile, double r, double q) {
  if (!(q > 1.0)) throw InvalidParameter("extrapolation ratio must exceed 1");
  Extrapolation out;
  out.samples = {flux_mass_at(profile, r), flux_mass_at(profile, q * r),
                 flux_mass_at(profile, q * q * r)};
  const double d1 = out.samples[0] - out.samples[1];
  const double d2 = out.samples[1] - out.samples[2];
  out.value = out.samples[2];
  out.exponent = std::numeric_limits<double>::quiet_NaN();
  if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    const double ratio = d1 / d2;
    out.exponent = std::log(ratio) / std::log(q);
    out.value = out.samples[2] - d2 / (ratio - 1.0);
  }
  return out;
}

double theta_graph(double dudr, double r, int epsilon) {
  const double rho = warped::rho(r, epsilon);
  if (std::isinf(dudr)) return 0.0;
  const double rho2v = rho * rho;
  return rho / std::sqrt(1.0 + rho2v * rho2v * dudr * dudr);
}

double scalar_curvature_symmetric(const RadialMetricProfile& profile, double r) {
  const int n = profile.ambient.n();
  const int eps = profile.ambient.epsilon();
  return (n - 1) * ((n - 2) * (eps - profile.psi2(r)) / (r * r) - profile.dpsi2(r) / r);
}

RadialMetricProfile induced_profile(const SymmetricGraph& graph) {
  const int eps = graph.ambient.epsilon();
  RadialMetricProfile prof{graph.ambient, {}, {}, graph.r0};
  auto dudr = graph.dudr;
  std::function<double(double)> d2 = graph.d2udr2;
  if (!d2) {
    const double r0 = graph.r0;
    d2 = [dudr, r0](double r) {
      const double h = std::min(1e-6 * r, 0.25 * (r - r0));
      return (dudr(r + h) - dudr(r - h)) / (2.0 * h);
    };
  }
  prof.psi2 = [dudr, eps](double r) {
    const double q = rho2(r, eps);
    const double s = dudr(r);
    if (std::isinf(s)) return 0.0;
    return q / (1.0 + q * q * s * s);
  };
  prof.dpsi2 = [dudr, d2, eps](double r) {
    const double q = rho2(r, eps);
    const double s = dudr(r);
    const double psi2 = q / (1.0 + q * q * s * s);
    const double dinv = -2.0 * r / (q * q) + 2.0 * r * s * s + 2.0 * q * s * d2(r);
    return -psi2 * psi2 * dinv;
  };
  return prof;
}

SymmetricGraph graph_of_profile(const RadialMetricProfile& profile) {
  const int eps = profile.ambient.epsilon();
  auto psi2 = profile.psi2;
  auto dpsi2 = profile.dpsi2;
  auto gap = [psi2, eps](double r) { return 1.0 / psi2(r) - 1.0 / rho2(r, eps); };
  SymmetricGraph g{profile.ambient, profile.r_min, {}, {}};
  g.dudr = [gap, eps](double r) {
    const double rho = std::sqrt(rho2(r, eps));
    return std::sqrt(std::max(0.0, gap(r))) / rho;
  };
  g.d2udr2 = [gap, psi2, dpsi2, eps](double r) {
    const double q = rho2(r, eps);
    const double rho = std::sqrt(q);
    const double gv = gap(r);
    if (!(gv > 0.0)) return 0.0;
    const double p2 = psi2(r);
    const double dg = -dpsi2(r) / (p2 * p2) + 2.0 * r / (q * q);
    return dg / (2.0 * std::sqrt(gv) * rho) - std::sqrt(gv) * r / (q * rho);
  };
  return g;
}

MassDecomposition graph_mass_formula(const SymmetricGraph& graph, double r_cut) {
  const auto& amb = graph.ambient;
  const int n = amb.n();
  const int eps = amb.epsilon();
  const double r0 = graph.r0;
  if (!(r_cut > r0)) throw InvalidParameter("r_cut must exceed the horizon radius");

  const double rho0 = warped::rho(r0, eps);
  const double h = (n - 1) * rho0 / r0;
  if (h < 0.0) throw InvalidParameter("horizon is not mean convex (H < 0)");

  const auto induced = induced_profile(graph);
  const double scalar_ref = static_cast<double>(n) * (n - 1);
  // r = r0 + x^2 absorbs the square-root behaviour at the horizon.
  auto integrand = [&](double x) {
    const double r = r0 + x * x;
    if (!(r > r0)) return 0.0;  // x^2 below one ulp of r0; the integrand vanishes like x
    const double theta = theta_graph(graph.dudr(r), r, eps);
    const double psi = std::sqrt(induced.psi2(r));
    const double excess = scalar_curvature_symmetric(induced, r) + scalar_ref;
    return 2.0 * x * theta / psi * excess * std::pow(r, n - 1) * amb.theta();
  };

  const double x_max = std::sqrt(r_cut - r0);
  constexpr int kPanels = 48;
  double bulk = detail::gauss_legendre(integrand, 0.0, x_max * std::ldexp(1.0, -kPanels / 2));
  for (int k = kPanels / 2; k > 0; --k) {
    const double a = x_max * std::ldexp(1.0, -k);
    bulk += detail::gauss_legendre(integrand, a, 0.5 * (a + 2.0 * a));
    bulk += detail::gauss_legendre(integrand, 1.5 * a, 2.0 * a);
  }

  MassDecomposition out;
  out.bulk = amb.c_n() * bulk;
  out.boundary = amb.c_n() * rho0 * h * amb.theta() * std::pow(r0, n - 1);
  out.total = out.bulk + out.boundary;
  return out;
}

PenroseCertificate penrose_certificate(double area, const AmbientModel& ambient, double total_mass,
                                       double tolerance) {
  PenroseCertificate c;
  c.mass = total_mass;
  c.area = area;
  c.anorm = area / ambient.theta();
  c.bound = kottler::mass_from_area(area, ambient);
  c.deficit = total_mass - c.bound;
  c.passed = c.deficit >= -tolerance;
  if (ambient.n() == 3 && ambient.genus()) c.genus_bound = kottler::haw_bound(area, *ambient.genus());
  if (ambient.epsilon() == -1 && c.anorm <= 1.0) {
    c.effective = false;
    c.annotation = "bound non-effective (area <= theta)";
  }
  return c;
}

void print_certificate(std::ostream& os, const PenroseCertificate& c) {
  const auto old = os.precision(12);
  os << "horizon area      " << c.area << '\n'
     << "normalized area   " << c.anorm << '\n'
     << "mass              " << c.mass << '\n'
     << "Penrose bound     " << c.bound << '\n';
  if (c.genus_bound) os << "genus-form bound  " << *c.genus_bound << '\n';
  os << "deficit           " << c.deficit << '\n'
     << "status            " << (c.passed ? "PASS" : "FAIL");
  if (!c.annotation.empty()) os << "  [" << c.annotation << "]";
  os << '\n';
  os.precision(old);
}

}  // namespace imcf::mass
