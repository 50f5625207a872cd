// imcf: command-line front end.
//
// Exit codes: 0 pass, 1 verified-property violation, 2 usage or config
// error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "imcf/errors.hpp"
#include "imcf/functionals.hpp"
#include "imcf/kottler.hpp"
#include "imcf/mass.hpp"
#include "imcf/solver.hpp"
#include "imcf/trace.hpp"
#include "imcf/verification.hpp"
#include "run_config.hpp"

namespace {

using namespace imcf;

enum Exit : int { kPass = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

struct AmbientArgs {
  int n = 3;
  int epsilon = 0;
  std::optional<double> theta;
  std::optional<int> genus;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "dimension n >= 3");
    cmd->add_option("--epsilon", epsilon, "cross-section curvature sign, -1 or 0");
    cmd->add_option("--theta", theta, "cross-section area (epsilon = -1 defaults to 1)");
    cmd->add_option("--genus", genus, "cross-section genus (n = 3, epsilon = -1)");
  }
  AmbientModel model() const {
    if (epsilon == -1 && !theta && !genus) return cli::make_ambient(n, epsilon, 1.0, genus);
    return cli::make_ambient(n, epsilon, theta, genus);
  }
  std::string describe() const {
    std::ostringstream os;
    os << std::setprecision(17) << "n=" << n << " epsilon=" << epsilon
       << " theta=" << model().theta();
    if (genus) os << " genus=" << *genus;
    return os.str();
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write '" + path + "'");
  return out;
}

bool check(const char* what, double value, double tol) {
  const bool ok = std::abs(value) < tol;
  std::printf("  %-34s %10.3e  (tol %.0e)  %s\n", what, value, tol, ok ? "ok" : "FAIL");
  return ok;
}

// ---------------------------------------------------------------- kottler

int cmd_kottler(const AmbientArgs& a, double mass) {
  const kottler::KottlerParams p{a.model(), mass};
  const int n = p.ambient.n();
  const double r_h = kottler::horizon_radius(p);
  const double area = p.ambient.theta() * std::pow(r_h, n - 1);
  std::printf("Kottler metric %s m=%.17g\n", a.describe().c_str(), mass);
  std::printf("  horizon radius      %.15g\n", r_h);
  std::printf("  horizon area        %.15g\n", area);
  std::printf("  critical mass       %.15g\n", kottler::critical_mass(n));
  std::printf("  boundary mass       %.15g\n", kottler::kottler_boundary_mass(p));
  if (n == 3 && p.ambient.genus())
    std::printf("  genus-form bound    %.15g\n", kottler::haw_bound(area, *p.ambient.genus()));

  bool ok = true;
  ok &= check("mass_from_area - m", kottler::mass_from_area(area, p.ambient) - mass, 1e-10 * std::max(1.0, mass));
  ok &= check("boundary mass - m", kottler::kottler_boundary_mass(p) - mass, 1e-10 * std::max(1.0, mass));
  ok &= check("f(r_h)", kottler::f_eval(r_h, p), 1e-10 * std::pow(r_h, n));
  double worst_scalar = 0.0, worst_static = 0.0;
  for (double factor : {1.01, 1.5, 2.0, 4.0, 10.0}) {
    const double r = factor * r_h;
    const auto k = kottler::sectional_curvatures(r, p);
    worst_scalar = std::max(worst_scalar, std::abs(kottler::scalar_curvature(k, n) + n * (n - 1.0)));
    const double scale = n * (n - 1.0) * kottler::rho_m(r, p);
    worst_static = std::max(worst_static, std::abs(kottler::staticity_residual(r, p)) / scale);
  }
  ok &= check("max |R + n(n-1)| from sectional", worst_scalar, 1e-10);
  ok &= check("max relative staticity residual", worst_static, 1e-8);
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kViolation;
}

// ------------------------------------------------------------------ embed

int cmd_embed(const AmbientArgs& a, double mass, double r_max, double step, const std::string& out) {
  const kottler::KottlerParams p{a.model(), mass};
  const auto rows = kottler::embedding_profile(p, r_max, step);
  auto file = open_output(out);
  file << std::setprecision(17) << "# imcf embed " << a.describe() << " mass=" << mass
       << " r_max=" << r_max << " step=" << step << '\n';
  kottler::write_profile_csv(file, rows);
  std::printf("wrote %zu rows to %s (u(r_max) = %.12g)\n", rows.size(), out.c_str(), rows.back().u);
  return kPass;
}

// ------------------------------------------------------------------- flow

int cmd_flow(const std::string& config_path, const std::string& trace_override, bool check_monotone) {
  auto cfg = cli::load_run_config(config_path);
  if (!trace_override.empty()) cfg.trace_path = trace_override;
  const auto initial = cfg.initial_state();

  std::optional<flow::FlowResult> run;
  try {
    run = flow::run(initial, cfg.solver);
  } catch (const NonMeanConvex& e) {
    std::fprintf(stderr, "imcf flow: aborted at t=%.6g: %s\n", e.time(), e.what());
    return kNumerical;
  } catch (const NumericalOverflow& e) {
    std::fprintf(stderr, "imcf flow: aborted at t=%.6g: %s\n", e.time(), e.what());
    return kNumerical;
  }

  const auto& result = *run;
  {
    auto file = open_output(cfg.trace_path);
    write_trace_csv(file, result.trace, "imcf flow\n" + cfg.resolved());
  }

  const auto& last = result.trace.records.back();
  std::printf("flow finished: t=%.6g after %zu steps, %zu records -> %s\n", last.t, result.steps,
              result.trace.records.size(), cfg.trace_path.c_str());
  std::printf("  final area          %.12g\n", last.area);
  std::printf("  final L             %.12g\n", last.L);
  std::printf("  final af_deficit    %.12g\n", last.af_deficit);
  const auto fit = functionals::fit_mean_curvature_decay(result.trace, 0.5 * last.t);
  if (fit.samples >= 3)
    std::printf("  H-decay exponent    %.6g (expected %.6g, R^2 %.4f)\n", fit.exponent,
                2.0 / (cfg.n - 1), fit.r_squared);
  else
    std::printf("  H-decay exponent    n/a (max H equals n-1 on the tail)\n");

  bool ok = true;
  if (result.trace.records.size() >= 3) {
    const auto reports = functionals::monotonicity_report(result.trace);
    functionals::print_reports(std::cout, reports);
    if (!cfg.reports_path.empty()) {
      auto file = open_output(cfg.reports_path);
      functionals::write_reports_csv(file, reports);
    }
    for (const auto& r : reports)
      if ((r.name == "jk_norm_nondecreasing" || r.name == "L_nonincreasing") && !r.passed()) ok = false;
  }
  return check_monotone && !ok ? kViolation : kPass;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, bool quiet) {
  const auto results = verify::run_suite(suite);
  int failed = 0;
  for (const auto& r : results) {
    verify::print_result(std::cout, r, !quiet);
    failed += r.passed ? 0 : 1;
  }
  std::printf("suite %s: %zu/%zu criteria passed\n", suite.c_str(), results.size() - failed,
              results.size());
  return failed == 0 ? kPass : kViolation;
}

// ------------------------------------------------------------------- mass

struct SampledProfile {
  std::vector<double> r, psi2;
};

// Reads `r,psi2` or `r,u,dudr` CSV (lines starting with '#' are skipped).
SampledProfile read_profile(const std::string& path, int epsilon) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open profile '" + path + "'");
  std::string line, header;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    header = line;
    break;
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const bool metric = header == "r,psi2";
  if (!metric && header != "r,u,dudr")
    throw InvalidParameter(path + ":" + std::to_string(line_no) +
                           ": expected header 'r,psi2' or 'r,u,dudr'");
  SampledProfile s;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      try {
        std::size_t used = 0;
        cols.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw InvalidParameter(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (cols.size() != (metric ? 2u : 3u))
      throw InvalidParameter(path + ":" + std::to_string(line_no) + ": wrong column count");
    s.r.push_back(cols[0]);
    if (metric) {
      s.psi2.push_back(cols[1]);
    } else {
      const double q = cols[0] * cols[0] + epsilon;
      const double slope = cols[2];
      s.psi2.push_back(std::isinf(slope) ? 0.0 : q / (1.0 + q * q * slope * slope));
    }
  }
  if (s.r.size() < 8) throw InvalidParameter(path + ": profile needs at least 8 rows");
  return s;
}

int cmd_mass(const AmbientArgs& a, std::optional<double> kottler_mass, const std::string& profile_path,
             const std::string& flux_out) {
  const auto amb = a.model();
  const int n = amb.n();
  double r_far = 1e3;
  std::string source = profile_path;
  const auto profile = [&] {
    if (kottler_mass) {
      source = "Kottler m=" + std::to_string(*kottler_mass);
      return mass::RadialMetricProfile::kottler({amb, *kottler_mass});
    }
    auto s = read_profile(profile_path, amb.epsilon());
    r_far = s.r.back();
    return mass::RadialMetricProfile::from_samples(amb, std::move(s.r), std::move(s.psi2));
  }();
  const double r0 = profile.r_min;
  const auto graph = mass::graph_of_profile(profile);
  const auto decomposition = mass::graph_mass_formula(graph, r_far);
  const auto flux = mass::extrapolate_flux_mass(profile, r_far / 4.0, 2.0);

  std::printf("mass of %s (%s)\n", source.c_str(), a.describe().c_str());
  std::printf("  horizon radius    %.12g\n", r0);
  std::printf("  bulk              %.12g\n", decomposition.bulk);
  std::printf("  boundary          %.12g\n", decomposition.boundary);
  std::printf("  total             %.12g\n", decomposition.total);
  std::printf("  flux limit        %.12g  (samples %.10g %.10g %.10g, exponent %.4g)\n", flux.value,
              flux.samples[0], flux.samples[1], flux.samples[2], flux.exponent);
  const double agreement = std::abs(decomposition.total - flux.value) / std::max(1e-12, std::abs(flux.value));
  std::printf("  total vs flux     %.3e relative (tol 5e-3)\n", agreement);

  const auto cert = mass::penrose_certificate(amb.theta() * std::pow(r0, n - 1), amb, decomposition.total);
  mass::print_certificate(std::cout, cert);

  if (!flux_out.empty()) {
    auto file = open_output(flux_out);
    file << std::setprecision(17) << "# imcf mass " << a.describe() << " source=" << source << '\n'
         << "r,flux_mass\n";
    const double lo = std::max(2.0 * r0, 1.0), hi = r_far;
    constexpr int kSamples = 25;
    for (int k = 0; k < kSamples; ++k) {
      const double r = lo * std::pow(hi / lo, k / (kSamples - 1.0));
      try {
        file << r << ',' << mass::flux_mass_at(profile, r) << '\n';
      } catch (const NumericalFailure&) {
        // outside the linearized range at small r
      }
    }
  }
  return cert.passed && agreement < 5e-3 ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse mean curvature flow laboratory for locally hyperbolic warped products"};
  app.require_subcommand(1);

  AmbientArgs amb;
  double mass = 0.0;
  auto* kottler_cmd = app.add_subcommand("kottler", "Kottler horizon, mass and curvature identities");
  amb.attach(kottler_cmd);
  kottler_cmd->add_option("--mass", mass, "mass parameter m > 0")->required();

  double r_max = 50.0, step = 0.01;
  std::string out = "profile.csv";
  auto* embed_cmd = app.add_subcommand("embed", "graph realization u(r) of a Kottler metric");
  amb.attach(embed_cmd);
  embed_cmd->add_option("--mass", mass, "mass parameter m >= 0")->required();
  embed_cmd->add_option("--r-max", r_max, "last radius");
  embed_cmd->add_option("--step", step, "radial step");
  embed_cmd->add_option("--out", out, "output CSV (r,u,dudr)");

  std::string config, trace_override;
  bool check_monotone = false;
  auto* flow_cmd = app.add_subcommand("flow", "run inverse mean curvature flow from a config file");
  flow_cmd->add_option("config", config, "run configuration")->required();
  flow_cmd->add_option("--trace", trace_override, "override [output] trace");
  flow_cmd->add_flag("--check", check_monotone, "exit 1 when a monotonicity report fails");

  std::string suite = "all";
  bool quiet = false;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite, "slices | geometry | monotonicity | asymptotics | mass | all");
  verify_cmd->add_flag("--quiet", quiet, "one line per criterion");

  std::optional<double> mass_param;
  std::string profile_path, flux_out;
  auto* mass_cmd = app.add_subcommand("mass", "mass and Penrose certificate of a symmetric profile");
  amb.attach(mass_cmd);
  auto* mass_opt = mass_cmd->add_option("--mass", mass_param, "Kottler mass parameter");
  auto* prof_opt = mass_cmd->add_option("--profile", profile_path, "CSV profile (r,psi2 or r,u,dudr)");
  mass_opt->excludes(prof_opt);
  mass_cmd->add_option("--flux-out", flux_out, "CSV of flux mass versus r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (kottler_cmd->parsed()) return cmd_kottler(amb, mass);
    if (embed_cmd->parsed()) return cmd_embed(amb, mass, r_max, step, out);
    if (flow_cmd->parsed()) return cmd_flow(config, trace_override, check_monotone);
    if (verify_cmd->parsed()) return cmd_verify(suite, quiet);
    if (mass_cmd->parsed()) {
      if (!mass_param && profile_path.empty()) throw InvalidParameter("mass needs --mass or --profile");
      return cmd_mass(amb, mass_param, profile_path, flux_out);
    }
  } catch (const cli::ConfigError& e) {
    std::fprintf(stderr, "imcf: %s: %s\n", config.c_str(), e.what());
    return kUsage;
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "imcf: %s\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "imcf: %s\n", e.what());
    return kUsage;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "imcf: numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const NonMeanConvex& e) {
    std::fprintf(stderr, "imcf: %s\n", e.what());
    return kNumerical;
  } catch (const NumericalOverflow& e) {
    std::fprintf(stderr, "imcf: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
