#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "imcf/errors.hpp"
#include "imcf/kottler.hpp"
#include "imcf/mass.hpp"
#include "oracles.hpp"

using namespace imcf;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

// psi^2 = r^2 + eps - 2 mu(r) / r^{n-2} with mu = m_inf - c / r^2.
struct ModifiedProfile {
  AmbientModel ambient;
  double m_inf, c;

  double mu(double r) const { return m_inf - c / (r * r); }
  double dmu(double r) const { return 2 * c / (r * r * r); }
  double psi2(double r) const {
    const int n = ambient.n();
    return r * r + ambient.epsilon() - 2 * mu(r) / std::pow(r, n - 2);
  }
  double dpsi2(double r) const {
    const int n = ambient.n();
    return 2 * r - 2 * dmu(r) / std::pow(r, n - 2) + 2 * (n - 2) * mu(r) / std::pow(r, n - 1);
  }
  double horizon() const {
    return oracle::bisect([this](double r) { return psi2(r); }, 1.0 + 1e-9, 100.0);
  }
  mass::RadialMetricProfile profile() const {
    return {ambient, [*this](double r) { return psi2(r); }, [*this](double r) { return dpsi2(r); }, horizon()};
  }
};

// <d_tau, N> from a Gram-Schmidt normal in the (tau, r) plane of
// rho^2 dtau^2 + dr^2 / rho^2, with the slope taken from neighbouring heights.
double theta_by_gram_schmidt(double r, double slope, int eps) {
  const double rho2 = r * r + eps;
  auto inner = [rho2](const double* a, const double* b) { return rho2 * a[0] * b[0] + a[1] * b[1] / rho2; };
  const double tangent[2] = {slope, 1.0};
  const double dtau[2] = {1.0, 0.0};
  const double coef = inner(dtau, tangent) / inner(tangent, tangent);
  double normal[2] = {dtau[0] - coef * tangent[0], dtau[1] - coef * tangent[1]};
  const double len = std::sqrt(inner(normal, normal));
  normal[0] /= len;
  normal[1] /= len;
  return inner(dtau, normal);
}

}  // namespace

TEST_CASE("flux mass of Kottler profiles") {
  const kottler::KottlerParams flat{AmbientModel::flat_torus(3), 4.0};
  const auto prof = mass::RadialMetricProfile::kottler(flat);
  CHECK(mass::flux_mass_at(prof, 100.0) == Approx(4.0).epsilon(1e-3));

  const kottler::KottlerParams hyp{AmbientModel::surface_of_genus(2), 3.0};
  const auto hp = mass::RadialMetricProfile::kottler(hyp);
  const double f10 = mass::flux_mass_at(hp, 10.0), f100 = mass::flux_mass_at(hp, 100.0), f1000 = mass::flux_mass_at(hp, 1000.0);
  CHECK(std::abs(f10 - 3.0) > std::abs(f100 - 3.0));
  CHECK(std::abs(f100 - 3.0) > std::abs(f1000 - 3.0));
  CHECK((f10 - 3.0) * (f1000 - 3.0) > 0.0);
  const auto ex = mass::extrapolate_flux_mass(hp, 10.0, 10.0);
  CHECK(std::abs(ex.value - 3.0) < 1e-3);
  CHECK(ex.exponent == Approx(3.0).epsilon(0.02));

  for (int n : {4, 5}) {
    const kottler::KottlerParams p{AmbientModel(n, -1, 2.0), 1.5};
    const auto e = mass::extrapolate_flux_mass(mass::RadialMetricProfile::kottler(p), 4.0, 2.0);
    CHECK(e.value == Approx(1.5).epsilon(1e-4));
    CHECK(e.exponent == Approx(n).epsilon(0.05));
  }
}

TEST_CASE("flux mass of the reference metric vanishes") {
  for (const auto& amb : {AmbientModel::flat_torus(3), AmbientModel::surface_of_genus(3), AmbientModel(5, -1, 1.0)}) {
    const auto prof = mass::RadialMetricProfile::reference(amb);
    for (double r : {1.5, 10.0, 300.0}) CHECK(mass::flux_mass_at(prof, r) == 0.0);
  }
}

TEST_CASE("flux mass preconditions") {
  const kottler::KottlerParams p{AmbientModel::flat_torus(3), 4.0};
  const auto prof = mass::RadialMetricProfile::kottler(p);
  const double rh = kottler::horizon_radius(p);
  CHECK_THROWS_AS(mass::flux_mass_at(prof, rh), DomainError);
  CHECK_THROWS_AS(mass::flux_mass_at(prof, 0.5 * rh), DomainError);
  CHECK_THROWS_AS(mass::flux_mass_at(prof, 1.1 * rh), NumericalFailure);
  CHECK_THROWS_AS(mass::extrapolate_flux_mass(prof, 10.0, 1.0), InvalidParameter);
}

TEST_CASE("flux of a modified profile tends to the asymptotic mass") {
  const ModifiedProfile mp{AmbientModel::surface_of_genus(2), 3.0, 1.0};
  const auto ex = mass::extrapolate_flux_mass(mp.profile(), 50.0, 4.0);
  CHECK(ex.value == Approx(3.0).epsilon(1e-5));
}

TEST_CASE("graph tilt factor") {
  for (int eps : {0, -1}) {
    for (double r : {1.2, 3.0, 40.0}) {
      CHECK(mass::theta_graph(0.0, r, eps) == Approx(warped::rho(r, eps)).epsilon(1e-15));
      CHECK(mass::theta_graph(0.7, r, eps) <= warped::rho(r, eps));
      CHECK(mass::theta_graph(0.7, r, eps) == Approx(theta_by_gram_schmidt(r, 0.7, eps)).epsilon(1e-10));
    }
  }
  CHECK(mass::theta_graph(INFINITY, 2.0, 0) == 0.0);
}

TEST_CASE("tilt factor on Kottler embeddings equals rho_m") {
  for (const auto& p : {kottler::KottlerParams{AmbientModel::flat_torus(3), 4.0},
                        kottler::KottlerParams{AmbientModel::surface_of_genus(2), 3.0},
                        kottler::KottlerParams{AmbientModel(4, 0, 5.0), 0.7}}) {
    const int eps = p.ambient.epsilon();
    const double step = 1e-3;
    const auto rows = kottler::embedding_profile(p, 30.0, step);
    REQUIRE(rows.size() > 100);
    double worst = 0.0, worst_fd = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
      const double r = rows[i].r;
      if (r < rows.front().r + 0.5) continue;
      const double rho_m = kottler::rho_m(r, p);
      worst = std::max(worst, std::abs(mass::theta_graph(rows[i].dudr, r, eps) - rho_m) / rho_m);
      const double slope = (rows[i + 1].u - rows[i - 1].u) / (rows[i + 1].r - rows[i - 1].r);
      worst_fd = std::max(worst_fd, std::abs(theta_by_gram_schmidt(r, slope, eps) - rho_m) / rho_m);
    }
    CHECK(worst < 1e-8);
    CHECK(worst_fd < 1e-5);
  }
}

TEST_CASE("scalar curvature of symmetric metrics") {
  for (int n : {3, 4, 5})
    for (int eps : {0, -1}) {
      const AmbientModel amb(n, eps, 2.0);
      for (double m : {0.5, 3.0}) {
        const kottler::KottlerParams p{amb, m};
        const auto prof = mass::RadialMetricProfile::kottler(p);
        const double rh = kottler::horizon_radius(p);
        for (int k = 1; k <= 50; ++k) {
          const double r = rh * (1.0 + 0.2 * k);
          CHECK(mass::scalar_curvature_symmetric(prof, r) == Approx(-n * (n - 1.0)).epsilon(1e-10));
        }
      }
      const auto ref = mass::RadialMetricProfile::reference(amb);
      CHECK(mass::scalar_curvature_symmetric(ref, 2.5) == Approx(-n * (n - 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("scalar curvature matches the Christoffel oracle on perturbed profiles") {
  for (int n : {3, 4})
    for (int eps : {0, -1}) {
      const double m = 1.0;
      auto psi2 = [=](double r) { return r * r + eps - 2 * m / std::pow(r, n - 2) + std::pow(r, -n); };
      auto dpsi2 = [=](double r) {
        return 2 * r + 2 * (n - 2) * m / std::pow(r, n - 1) - n * std::pow(r, -n - 1);
      };
      const mass::RadialMetricProfile prof{AmbientModel(n, eps, 1.0), psi2, dpsi2, 2.0};
      for (double r : {2.0, 3.5, 7.0, 15.0}) {
        const double got = mass::scalar_curvature_symmetric(prof, r);
        const double ref = oracle::diagonal_metric_scalar(
            n, [&](double x) { return 1.0 / psi2(x); }, [](double x) { return x * x; }, r, eps * (n - 1.0) * (n - 2.0));
        CHECK(std::abs(got - ref) < 1e-6);
        if (r < 10.0) CHECK(std::abs(got + n * (n - 1.0)) > 1e-5);
      }
    }
}

TEST_CASE("graph mass formula on Kottler graphs") {
  for (const auto& p : {kottler::KottlerParams{AmbientModel::surface_of_genus(2), 3.0},
                        kottler::KottlerParams{AmbientModel::flat_torus(3), 4.0},
                        kottler::KottlerParams{AmbientModel(4, -1, 2.0), 0.4}}) {
    const auto graph = mass::graph_of_profile(mass::RadialMetricProfile::kottler(p));
    // The r^{n-1} weight amplifies roundoff in R + n(n-1), so higher
    // dimensions integrate over a shorter range.
    const auto d = mass::graph_mass_formula(graph, p.ambient.n() == 3 ? 1e3 : 1e2);
    CHECK(std::abs(d.bulk) < 1e-6);
    CHECK(d.boundary == Approx(p.m).epsilon(1e-10));
    CHECK(std::abs(d.total - p.m) < 1e-6);
    CHECK(d.boundary == Approx(kottler::kottler_boundary_mass(p)).epsilon(1e-12));
  }
  const kottler::KottlerParams p{AmbientModel::surface_of_genus(2), 3.0};
  const auto graph = mass::graph_of_profile(mass::RadialMetricProfile::kottler(p));
  CHECK_THROWS_AS(mass::graph_mass_formula(graph, graph.r0), InvalidParameter);
}

TEST_CASE("graph mass formula on a modified profile") {
  for (const auto& mp : {ModifiedProfile{AmbientModel::surface_of_genus(2), 3.0, 1.0},
                         ModifiedProfile{AmbientModel::flat_torus(3), 2.0, 0.5}}) {
    const auto graph = mass::graph_of_profile(mp.profile());
    const double r_cut = 1e3;
    const auto d = mass::graph_mass_formula(graph, r_cut);
    const double r0 = mp.horizon();
    const int n = mp.ambient.n();
    // Boundary: (r0^n + eps r0^{n-2}) / 2 = mu(r0); bulk integrates mu'.
    CHECK(d.boundary == Approx(mp.mu(r0)).epsilon(1e-10));
    CHECK(d.bulk == Approx(mp.m_inf - mp.mu(r0) - mp.c / (r_cut * r_cut)).epsilon(1e-6));
    CHECK(d.total >= d.boundary);
    const auto flux = mass::extrapolate_flux_mass(mp.profile(), 50.0, 4.0);
    CHECK(std::abs(d.total - flux.value) < 5e-3 * flux.value);

    const double area = mp.ambient.theta() * std::pow(r0, n - 1);
    const auto cert = mass::penrose_certificate(area, mp.ambient, d.total);
    CHECK(cert.passed);
    CHECK(cert.deficit == Approx(mp.c / (r0 * r0)).epsilon(1e-5));
  }
}

TEST_CASE("Penrose certificate") {
  const kottler::KottlerParams p{AmbientModel::surface_of_genus(3), 2.5};
  const double rh = kottler::horizon_radius(p);
  const double area = p.ambient.theta() * rh * rh;
  const auto cert = mass::penrose_certificate(area, p.ambient, p.m);
  CHECK(std::abs(cert.deficit) < 1e-6);
  CHECK(cert.passed);
  CHECK(cert.effective);
  REQUIRE(cert.genus_bound.has_value());
  CHECK(*cert.genus_bound == Approx(kottler::haw_bound(area, 3)).epsilon(1e-15));
  CHECK(cert.anorm == Approx(rh * rh).epsilon(1e-14));

  CHECK_FALSE(mass::penrose_certificate(area, p.ambient, p.m - 1e-3).passed);

  const auto small = mass::penrose_certificate(0.5 * p.ambient.theta(), p.ambient, 0.0);
  CHECK_FALSE(small.effective);
  CHECK(small.annotation.find("bound non-effective") != std::string::npos);
  CHECK(small.passed);

  const auto flat = mass::penrose_certificate(0.5, AmbientModel::flat_torus(4), 1.0);
  CHECK(flat.effective);
  CHECK_FALSE(flat.genus_bound.has_value());

  std::ostringstream os;
  mass::print_certificate(os, small);
  CHECK(os.str().find("[bound non-effective") != std::string::npos);
  CHECK(os.str().find("genus-form bound") != std::string::npos);
}

TEST_CASE("sampled profiles") {
  const auto amb = AmbientModel::surface_of_genus(2);
  CHECK_THROWS_AS(mass::RadialMetricProfile::from_samples(amb, {1.0, 2.0}, {1.0, 2.0}), InvalidParameter);
  CHECK_THROWS_AS(mass::RadialMetricProfile::from_samples(amb, {1.0, 2.0, 3.0}, {1.0, 2.0}), InvalidParameter);
  CHECK_THROWS_AS(mass::RadialMetricProfile::from_samples(amb, {1.0, 3.0, 2.0}, {1.0, 2.0, 3.0}), InvalidParameter);

  const kottler::KottlerParams p{amb, 3.0};
  const double rh = kottler::horizon_radius(p);
  std::vector<double> rs, ps;
  for (int k = 0; k <= 400; ++k) {
    const double r = rh + 0.05 * k;
    rs.push_back(r);
    ps.push_back(std::max(0.0, kottler::f_eval(r, p)) / r);
  }
  const auto prof = mass::RadialMetricProfile::from_samples(amb, rs, ps);
  CHECK_THROWS_AS(prof(rs.back() + 1.0), DomainError);
  CHECK_THROWS_AS(prof(rh - 0.1), DomainError);
  double worst = 0.0, worst_d = 0.0;
  for (int k = 20; k < 400; ++k) {
    const double r = rh + 0.05 * k + 0.025;
    const double exact = kottler::f_eval(r, p) / r;
    worst = std::max(worst, std::abs(prof(r) - exact) / exact);
    const double dexact = 2 * r + 2 * p.m / (r * r);
    worst_d = std::max(worst_d, std::abs(prof.dpsi2(r) - dexact) / dexact);
  }
  CHECK(worst < 1e-6);
  CHECK(worst_d < 1e-3);
  CHECK(prof.r_min == Approx(rh));
}

TEST_CASE("graph and induced profile are inverse") {
  const ModifiedProfile mp{AmbientModel::surface_of_genus(2), 3.0, 1.0};
  const auto prof = mp.profile();
  const auto back = mass::induced_profile(mass::graph_of_profile(prof));
  for (double r : {prof.r_min + 0.01, prof.r_min + 1.0, 5.0, 40.0}) {
    CHECK(back(r) == Approx(prof(r)).epsilon(1e-12));
    CHECK(back.dpsi2(r) == Approx(prof.dpsi2(r)).epsilon(1e-9));
  }
  // Numerical second derivative when none is supplied.
  auto g = mass::graph_of_profile(prof);
  g.d2udr2 = nullptr;
  const auto fd = mass::induced_profile(g);
  CHECK(fd.dpsi2(5.0) == Approx(prof.dpsi2(5.0)).epsilon(1e-6));
}
