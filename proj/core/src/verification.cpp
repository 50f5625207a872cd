#include "imcf/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "imcf/errors.hpp"
#include "imcf/functionals.hpp"
#include "imcf/hypersurface.hpp"
#include "imcf/kottler.hpp"
#include "imcf/mass.hpp"

namespace imcf::verify {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Closes a criterion: the runtime budget is part of the pass condition.
CriterionResult finish(CriterionResult r, bool ok, Clock::time_point start, double extra = 0.0) {
  r.seconds = seconds_since(start) + extra;
  const bool in_budget = r.seconds < r.budget_seconds;
  if (!in_budget) r.details.push_back(fmt("runtime %.3fs exceeds budget %.0fs", r.seconds, r.budget_seconds));
  r.passed = ok && in_budget;
  return r;
}

// Cross-section area for eps = -1 in dimension n: genus surfaces for n = 3,
// an arbitrary positive volume otherwise (the checks are theta-independent).
AmbientModel hyperbolic_ambient(int n, int variant) {
  if (n == 3) return AmbientModel::surface_of_genus(2 + variant);
  return AmbientModel(n, -1, 7.5 * (1 + variant), std::nullopt);
}

AmbientModel ambient_for(int n, int eps, int variant = 0) {
  return eps == 0 ? AmbientModel::flat_torus(n) : hyperbolic_ambient(n, variant);
}

const kottler::KottlerParams& param_set(int i) {
  static const kottler::KottlerParams sets[] = {
      {AmbientModel::flat_torus(3), 4.0},
      {AmbientModel::surface_of_genus(2), 3.0},
      {AmbientModel(4, -1, 7.5), 6.0},
  };
  return sets[i];
}

std::string label(const kottler::KottlerParams& p) {
  return fmt("(n=%d, eps=%d, m=%g)", p.ambient.n(), p.ambient.epsilon(), p.m);
}

}  // namespace

CriterionResult slice_equality() {
  const auto start = Clock::now();
  CriterionResult r{1, "slice equality cases", false, 0, 1.0, {}};
  double worst_af = 0, worst_br = 0, worst_l = 0;
  int count = 0;
  const double eps0_heights[] = {-0.5, 0.0, 0.6, 1.2};
  const double eps1_heights[] = {0.9, 1.3, 1.8};
  for (int n : {3, 4, 5}) {
    for (int eps : {0, -1}) {
      const auto heights = eps == 0 ? std::span<const double>(eps0_heights)
                                    : std::span<const double>(eps1_heights);
      for (std::size_t k = 0; k < heights.size(); ++k) {
        if (count == 20) break;
        const auto amb = ambient_for(n, eps, static_cast<int>(k % 2));
        const auto state = GraphState::slice(amb, heights[k]);
        const auto f = functionals::functionals_of(state);
        worst_af = std::max(worst_af, std::abs(functionals::af_deficit(amb, f)));
        worst_br = std::max(worst_br, std::abs(functionals::brendle_deficit(state)));
        worst_l = std::max(worst_l, std::abs(f.L - (n - 1) * amb.theta() * eps));
        ++count;
      }
    }
  }
  r.details.push_back(fmt("%d slices: max|af|=%.2e max|brendle|=%.2e max|L-(n-1)theta eps|=%.2e (tol 1e-10)",
                          count, worst_af, worst_br, worst_l));
  return finish(r, count == 20 && worst_af < 1e-10 && worst_br < 1e-10 && worst_l < 1e-10, start);
}

CriterionResult kottler_round_trip(std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r{2, "Kottler mass round trip", false, 0, 1.0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass_dist(0.0, 100.0);
  double worst_area = 0, worst_boundary = 0;
  for (int i = 0; i < 50; ++i) {
    double m = mass_dist(rng);
    if (m == 0.0) m = 100.0;
    const int n = 3 + i % 3;
    const int eps = (i / 3) % 2 == 0 ? 0 : -1;
    const kottler::KottlerParams p{ambient_for(n, eps, i % 2), m};
    const double r_h = kottler::horizon_radius(p);
    const double area = p.ambient.theta() * std::pow(r_h, n - 1);
    worst_area = std::max(worst_area, std::abs(kottler::mass_from_area(area, p.ambient) - m));
    worst_boundary = std::max(worst_boundary, std::abs(kottler::kottler_boundary_mass(p) - m));
  }
  r.details.push_back(fmt("50 masses: max|m(area)-m|=%.2e max|boundary-m|=%.2e (tol 1e-10)",
                          worst_area, worst_boundary));
  return finish(r, worst_area < 1e-10 && worst_boundary < 1e-10, start);
}

CriterionResult scalar_curvature_identity() {
  const auto start = Clock::now();
  CriterionResult r{3, "scalar curvature identity", false, 0, 1.0, {}};
  double worst = 0;
  for (int n : {3, 4, 5}) {
    for (int eps : {0, -1}) {
      const kottler::KottlerParams p{ambient_for(n, eps), 2.5};
      const auto profile = mass::RadialMetricProfile::kottler(p);
      const double r_h = profile.r_min;
      for (int k = 1; k <= 50; ++k) {
        const double rad = r_h * std::pow(50.0, k / 50.0) * (1.0 + 1e-3 / k);
        const double scalar = mass::scalar_curvature_symmetric(profile, rad);
        worst = std::max(worst, std::abs(scalar + n * (n - 1.0)));
      }
    }
  }
  r.details.push_back(fmt("max|R + n(n-1)|=%.2e over 6 families x 50 radii (tol 1e-10)", worst));
  return finish(r, worst < 1e-10, start);
}

CriterionResult flux_mass_limit() {
  const auto start = Clock::now();
  CriterionResult r{4, "flux mass limit", false, 0, 5.0, {}};
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const auto& p = param_set(i);
    const auto ex = mass::extrapolate_flux_mass(mass::RadialMetricProfile::kottler(p), 10.0, 10.0);
    const double rel = std::abs(ex.value - p.m) / p.m;
    ok = ok && rel < 1e-3;
    r.details.push_back(fmt("%s flux(10,100,1000)=(%.8g, %.8g, %.8g) -> %.10g rel.err %.2e (tol 1e-3)",
                            label(p).c_str(), ex.samples[0], ex.samples[1], ex.samples[2], ex.value, rel));
  }
  return finish(r, ok, start);
}

CriterionResult embedding_consistency() {
  const auto start = Clock::now();
  CriterionResult r{5, "embedding consistency", false, 0, 5.0, {}};
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const auto& p = param_set(i);
    const double r_h = kottler::horizon_radius(p);
    const auto rows = kottler::embedding_profile(p, 50.0, 1e-3);
    double worst_metric = 0, worst_theta = 0;
    for (const auto& row : rows) {
      if (row.r < r_h + 1e-3) continue;
      worst_metric = std::max(worst_metric, kottler::embedding_metric_residual(row, p));
      const double theta = mass::theta_graph(row.dudr, row.r, p.ambient.epsilon());
      worst_theta = std::max(worst_theta, std::abs(theta - kottler::rho_m(row.r, p)));
    }
    ok = ok && worst_metric < 1e-9 && worst_theta < 1e-8 && rows.front().u == 0.0;
    r.details.push_back(fmt("%s %zu rows: metric residual %.2e (tol 1e-9), |Theta-rho_m| %.2e (tol 1e-8)",
                            label(p).c_str(), rows.size(), worst_metric, worst_theta));
  }
  return finish(r, ok, start);
}

CriterionResult exact_area_law() {
  const auto start = Clock::now();
  CriterionResult r{6, "exact area law on slices", false, 0, 5.0, {}};
  bool ok = true;
  for (int eps : {0, -1}) {
    const auto amb = ambient_for(3, eps);
    const double s0 = eps == 0 ? 1.0 : warped::s_from_r(2.0, -1);
    flow::FlowConfig cfg;
    cfg.t_end = 2.0;
    cfg.record_dt = 0.1;
    const auto res = flow::run(GraphState::slice(amb, s0), cfg);
    const double area0 = res.trace.records.front().area;
    const double lam0 = warped::lambda(s0, eps);
    double worst_area = 0;
    for (const auto& rec : res.trace.records)
      worst_area = std::max(worst_area, std::abs(rec.area * std::exp(-rec.t) / area0 - 1.0));
    const double lam_t = warped::lambda(res.final_state.u()[0], eps);
    const double lam_err = std::abs(lam_t / (lam0 * std::exp(2.0 / 2.0)) - 1.0);
    ok = ok && worst_area < 1e-8 && lam_err < 1e-10;
    r.details.push_back(fmt("eps=%d: max|A e^-t/A0 - 1|=%.2e (tol 1e-8), lambda(u(2)) rel.err %.2e (tol 1e-10)",
                            eps, worst_area, lam_err));
  }
  return finish(r, ok, start);
}

flow::FlowResult standard_perturbed_run() {
  const auto amb = AmbientModel::flat_torus(3);
  const CrossSectionGrid grid(2, 64);
  const FourierMode modes[] = {{{1, 0}, 0.1, 0.0}, {{0, 1}, 0.05, 0.0}};
  flow::FlowConfig cfg;
  cfg.t_end = 12.0;
  cfg.record_dt = 0.1;
  return flow::run(GraphState::fourier(amb, grid, 1.0, modes), cfg);
}

CriterionResult monotonicity(const flow::FlowResult& run, double run_seconds) {
  const auto start = Clock::now();
  CriterionResult r{7, "monotonicity on the standard perturbed run", false, 0, 300.0, {}};
  const auto reports = functionals::monotonicity_report(run.trace);
  bool ok = true;
  for (const auto& rep : reports) {
    const bool gating = rep.name == "jk_norm_nondecreasing" || rep.name == "L_nonincreasing" ||
                        rep.name == "J_le_K";
    if (gating) ok = ok && rep.passed();
    r.details.push_back(fmt("%-28s %s worst=%.3e tol=%.3e at %s%s", rep.name.c_str(),
                            rep.passed() ? "PASS" : "FAIL", rep.worst_violation, rep.tolerance,
                            rep.location.c_str(), gating ? "" : " [informational]"));
  }
  return finish(r, ok, start, run_seconds);
}

CriterionResult asymptotic_limits(const flow::FlowResult& run, double run_seconds) {
  const auto start = Clock::now();
  CriterionResult r{8, "asymptotic limits on the standard perturbed run", false, 0, 300.0, {}};
  const auto reports = functionals::asymptotics_report(run.trace, AmbientModel::flat_torus(3));
  for (const auto& rep : reports)
    r.details.push_back(fmt("%-22s %s worst=%.3e tol=%.3e %s", rep.name.c_str(),
                            rep.passed() ? "PASS" : "FAIL", rep.worst_violation, rep.tolerance,
                            rep.note.c_str()));
  const auto& first = run.trace.records.front();
  const auto& last = run.trace.records.back();
  r.details.push_back(fmt("max_grad_v %.4e -> %.4e, w_range %.4e -> %.4e, mean u-t/2 -> %.6f",
                          first.max_grad_v, last.max_grad_v, first.w_range, last.w_range,
                          last.mean_rescaled_u));
  return finish(r, functionals::all_passed(reports), start, run_seconds);
}

CriterionResult discretization_convergence() {
  const auto start = Clock::now();
  CriterionResult r{9, "discretization convergence", false, 0, 30.0, {}};
  const auto amb = AmbientModel::flat_torus(3);
  const FourierMode modes[] = {{{1, 0}, 0.1, 0.0}, {{1, 1}, 0.0, 0.06}, {{0, 2}, 0.04, 0.0}};
  double res[3];
  const int sizes[] = {32, 64, 128};
  for (int i = 0; i < 3; ++i)
    res[i] = surface::minkowski_residual(GraphState::fourier(amb, CrossSectionGrid(2, sizes[i]), 1.0, modes));
  const double order1 = std::log2(res[0] / res[1]);
  const double order2 = std::log2(res[1] / res[2]);
  r.details.push_back(fmt("Minkowski residual M=32,64,128: %.3e %.3e %.3e, orders %.3f %.3f (min 1.8)",
                          res[0], res[1], res[2], order1, order2));

  const auto state = GraphState::fourier(amb, CrossSectionGrid(2, 64), 1.0, modes);
  const double didt = functionals::didt_prediction(state);
  const double resid = functionals::didt_identity_check(state, 1e-4);
  const double rel = resid / std::abs(didt);
  r.details.push_back(fmt("dI/dt identity at M=64, delta=1e-4: |residual|=%.3e, relative %.3e (tol 1e-4)",
                          resid, rel));
  return finish(r, order1 >= 1.8 && order2 >= 1.8 && rel < 1e-4, start);
}

CriterionResult inequality_sampling(std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r{10, "inequality sampling on random torus graphs", false, 0, 120.0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> height(-0.5, 1.5);
  std::uniform_real_distribution<double> amp(-0.2, 0.2);
  std::uniform_int_distribution<int> wave(-2, 2);
  std::uniform_int_distribution<int> mode_count(1, 3);
  const auto amb = AmbientModel::flat_torus(3);
  const CrossSectionGrid grid(2, 32);
  int accepted = 0, rejected = 0;
  double worst_af = INFINITY, worst_br = INFINITY;
  while (accepted < 100) {
    std::vector<FourierMode> modes(mode_count(rng));
    for (auto& m : modes) {
      do {
        m.k = {wave(rng), wave(rng)};
      } while (m.k[0] == 0 && m.k[1] == 0);
      m.amp_cos = amp(rng);
      m.amp_sin = amp(rng);
    }
    const auto state = GraphState::fourier(amb, grid, height(rng), modes);
    const auto h = surface::mean_curvature(state);
    if (*std::min_element(h.begin(), h.end()) <= 1e-8) {
      ++rejected;
      continue;
    }
    ++accepted;
    worst_af = std::min(worst_af, functionals::af_deficit(state));
    worst_br = std::min(worst_br, functionals::brendle_deficit(state));
  }
  r.details.push_back(fmt("100 graphs (%d non-mean-convex draws rejected): min af=%.3e min brendle=%.3e (floor -1e-8)",
                          rejected, worst_af, worst_br));
  return finish(r, worst_af >= -1e-8 && worst_br >= -1e-8, start);
}

CriterionResult corollary_consistency() {
  const auto start = Clock::now();
  CriterionResult r{11, "genus corollary consistency", false, 0, 1.0, {}};
  double worst = 0;
  for (int genus : {1, 2, 3, 4}) {
    const auto amb = genus == 1 ? AmbientModel(3, 0, 4.0 * std::numbers::pi, 1)
                                : AmbientModel(3, -1, 4.0 * std::numbers::pi * (genus - 1), genus);
    for (int k = 1; k <= 20; ++k) {
      const double area = amb.theta() * 0.25 * k;
      const double diff = std::abs(kottler::haw_bound(area, genus) - kottler::mass_from_area(area, amb));
      worst = std::max(worst, diff / std::max(1.0, std::abs(kottler::mass_from_area(area, amb))));
    }
  }
  r.details.push_back(fmt("genus 1..4 x 20 areas: max |haw - penrose| = %.2e (tol 1e-12)", worst));
  return finish(r, worst < 1e-12, start);
}

std::vector<CriterionResult> run_suite(std::string_view suite) {
  if (std::find(std::begin(kSuites), std::end(kSuites), suite) == std::end(kSuites))
    throw InvalidParameter("unknown suite '" + std::string(suite) + "'");
  const bool all = suite == "all";
  std::vector<CriterionResult> out;
  if (all || suite == "slices") {
    out.push_back(slice_equality());
    out.push_back(exact_area_law());
  }
  if (all || suite == "mass") {
    out.push_back(kottler_round_trip());
    out.push_back(scalar_curvature_identity());
    out.push_back(flux_mass_limit());
    out.push_back(embedding_consistency());
    out.push_back(corollary_consistency());
  }
  if (all || suite == "geometry") {
    out.push_back(discretization_convergence());
    out.push_back(inequality_sampling());
  }
  if (all || suite == "monotonicity" || suite == "asymptotics") {
    const auto start = Clock::now();
    const auto run = standard_perturbed_run();
    const double secs = seconds_since(start);
    if (all || suite == "monotonicity") out.push_back(monotonicity(run, secs));
    if (all || suite == "asymptotics") out.push_back(asymptotic_limits(run, secs));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

void print_result(std::ostream& os, const CriterionResult& r, bool verbose) {
  os << fmt("[%s] criterion %2d: %s (%.3fs, budget %.0fs)\n", r.passed ? "PASS" : "FAIL", r.id,
            r.title.c_str(), r.seconds, r.budget_seconds);
  if (verbose)
    for (const auto& d : r.details) os << "        " << d << '\n';
}

}  // namespace imcf::verify
