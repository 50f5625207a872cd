#include "imcf/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include "imcf/errors.hpp"

namespace imcf::functionals {
namespace {

double exponent_ratio(int num, int den) { return static_cast<double>(num) / den; }

std::string at_time(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t=%.6g", t);
  return buf;
}

Field graph_speed(const surface::SurfaceGeometry& geo) {
  Field speed(geo.w.size());
  for (std::size_t i = 0; i < speed.size(); ++i) speed[i] = geo.w[i] / geo.mean_curvature[i];
  return speed;
}

void require_mean_convex(const surface::SurfaceGeometry& geo) {
  const double min_h = *std::min_element(geo.mean_curvature.begin(), geo.mean_curvature.end());
  if (!(min_h > 0.0)) throw NonMeanConvex(0.0, min_h);
}

}  // namespace

Functionals functionals_of(const GraphState& state) {
  return functionals_of(state, surface::evaluate(state));
}

Functionals functionals_of(const GraphState& state, const surface::SurfaceGeometry& geo) {
  const auto& amb = state.ambient();
  const int n = amb.n();
  const std::size_t size = state.size();
  Field i_density(size), j_density(size);
  for (std::size_t k = 0; k < size; ++k) {
    i_density[k] = geo.lambda_dot[k] * geo.mean_curvature[k] * geo.area_density[k];
    j_density[k] = geo.support[k] * geo.area_density[k];
  }
  Functionals f;
  f.area = state.integrate(geo.area_density);
  f.anorm = f.area / amb.theta();
  f.I = state.integrate(i_density);
  f.J = state.integrate(j_density);
  f.K = amb.theta() * std::pow(f.anorm, exponent_ratio(n, n - 1));
  f.L = (f.I - (n - 1) * f.K) / std::pow(f.anorm, exponent_ratio(n - 2, n - 1));
  return f;
}

double af_deficit(const AmbientModel& ambient, const Functionals& f) {
  const int n = ambient.n();
  const double bound = 0.5 * (std::pow(f.anorm, exponent_ratio(n, n - 1)) +
                              ambient.epsilon() * std::pow(f.anorm, exponent_ratio(n - 2, n - 1)));
  return ambient.c_n() * f.I - bound;
}

double af_deficit(const GraphState& state) {
  return af_deficit(state.ambient(), functionals_of(state));
}

double af_deficit_from_l(const AmbientModel& ambient, const Functionals& f) {
  const int n = ambient.n();
  return ambient.c_n() * (f.L - (n - 1) * ambient.theta() * ambient.epsilon()) *
         std::pow(f.anorm, exponent_ratio(n - 2, n - 1));
}

double inverse_h_integral(const GraphState& state, const surface::SurfaceGeometry& geo) {
  Field density(state.size());
  for (std::size_t k = 0; k < density.size(); ++k)
    density[k] = geo.lambda_dot[k] / geo.mean_curvature[k] * geo.area_density[k];
  return state.integrate(density);
}

double brendle_deficit(const GraphState& state, const surface::SurfaceGeometry& geo) {
  require_mean_convex(geo);
  Field j_density(state.size());
  for (std::size_t k = 0; k < j_density.size(); ++k)
    j_density[k] = geo.support[k] * geo.area_density[k];
  const int n = state.ambient().n();
  return (n - 1) * inverse_h_integral(state, geo) - state.integrate(j_density);
}

double brendle_deficit(const GraphState& state) {
  return brendle_deficit(state, surface::evaluate(state));
}

double didt_prediction(const GraphState& state) {
  const auto geo = surface::evaluate(state);
  require_mean_convex(geo);
  const Field k_ext = surface::extrinsic_scalar(state);
  Field density(state.size());
  for (std::size_t k = 0; k < density.size(); ++k)
    density[k] = geo.lambda_dot[k] * k_ext[k] / geo.mean_curvature[k] * geo.area_density[k];
  return 2.0 * state.integrate(density) + 2.0 * functionals_of(state, geo).J;
}

double didt_identity_check(const GraphState& state, double probe) {
  if (!(probe > 0.0)) throw InvalidParameter("probe step must be positive");
  const auto geo = surface::evaluate(state);
  require_mean_convex(geo);
  const Field speed = graph_speed(geo);
  Field forward = state.u(), backward = state.u();
  for (std::size_t k = 0; k < speed.size(); ++k) {
    forward[k] += probe * speed[k];
    backward[k] -= probe * speed[k];
  }
  const double i_plus = functionals_of(state.with_u(std::move(forward), state.t() + probe)).I;
  const double i_minus = functionals_of(state.with_u(std::move(backward), state.t() - probe)).I;
  return std::abs((i_plus - i_minus) / (2.0 * probe) - didt_prediction(state));
}

std::vector<InequalityReport> monotonicity_report(const FlowTrace& trace) {
  const auto& recs = trace.records;
  if (recs.size() < 3) throw InsufficientTrace("monotonicity analysis needs at least 3 records");
  const int n = trace.n;
  const double base = 10.0 * (trace.record_dt * trace.record_dt + trace.spacing * trace.spacing);
  const double floor = 1e-12 * trace.theta;

  InequalityReport jk{"jk_norm_nondecreasing", -INFINITY, "", 0.0, ""};
  InequalityReport ll{"L_nonincreasing", -INFINITY, "", 0.0, ""};
  InequalityReport area{"area_growth_dA_eq_A", -INFINITY, "", 0.0, ""};
  InequalityReport j_rate{"J_growth_n_int_rho_over_H", -INFINITY, "", 0.0, ""};
  InequalityReport j_le_k{"J_le_K", -INFINITY, "", 1e-8, ""};

  auto update = [](InequalityReport& rep, double violation, double t, double tol) {
    if (violation > rep.worst_violation) {
      rep.worst_violation = violation;
      rep.location = at_time(t);
      rep.tolerance = tol;
    }
  };
  auto local_scale = [&](auto member, std::size_t i) {
    return std::max({std::abs(recs[i - 1].*member), std::abs(recs[i].*member),
                     std::abs(recs[i + 1].*member), floor});
  };

  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const double span = recs[i + 1].t - recs[i - 1].t;
    const double t = recs[i].t;

    const double djk = (recs[i + 1].jk_norm - recs[i - 1].jk_norm) / span;
    const double tol_jk = base * local_scale(&TraceRecord::jk_norm, i);
    update(jk, -djk - tol_jk, t, tol_jk);

    const double dl = (recs[i + 1].L - recs[i - 1].L) / span;
    const double tol_l = base * local_scale(&TraceRecord::L, i);
    update(ll, dl - tol_l, t, tol_l);

    const double da = (recs[i + 1].area - recs[i - 1].area) / span;
    const double tol_a = base * recs[i].area;
    update(area, std::abs(da - recs[i].area) - tol_a, t, tol_a);

    // int rho/H is recovered from the Brendle deficit: (deficit + J) / (n-1).
    const double dj = (recs[i + 1].J - recs[i - 1].J) / span;
    const double predicted = n * (recs[i].brendle_deficit + recs[i].J) / (n - 1);
    const double tol_j = base * std::abs(recs[i].J);
    update(j_rate, std::abs(dj - predicted) - tol_j, t, tol_j);
  }
  for (const auto& r : recs) update(j_le_k, r.J - r.K - 1e-8, r.t, 1e-8);

  jk.note = "central differences; tol = 10 (dt^2 + dtheta^2) |jk_norm|";
  ll.note = "central differences; tol = 10 (dt^2 + dtheta^2) |L|";
  return {jk, ll, area, j_rate, j_le_k};
}

DecayFit fit_mean_curvature_decay(const FlowTrace& trace, double t_from) {
  const double target = trace.n - 1.0;
  std::vector<double> xs, ys;
  for (const auto& r : trace.records) {
    const double excess = r.max_h - target;
    if (r.t >= t_from && r.t > 0.0 && excess > 0.0) {
      xs.push_back(r.t);
      ys.push_back(std::log(excess / r.t));
    }
  }
  DecayFit fit;
  fit.samples = xs.size();
  if (xs.size() < 3) return fit;
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.log_c = my - slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

std::vector<InequalityReport> asymptotics_report(const FlowTrace& trace, const AmbientModel& ambient) {
  const auto& recs = trace.records;
  if (recs.size() < 3) throw InsufficientTrace("asymptotics need at least 3 records");
  const auto& last = recs.back();
  const auto& first = recs.front();
  if (last.t < 10.0) throw InsufficientTrace("asymptotics need a trace reaching t >= 10");
  const int n = ambient.n();
  std::vector<InequalityReport> out;

  const double ratio = last.J / (ambient.theta() * std::pow(last.anorm, exponent_ratio(n, n - 1)));
  out.push_back({"J_over_theta_A_limit", std::abs(ratio - 1.0) - 0.01, at_time(last.t), 0.01,
                 "ratio=" + std::to_string(ratio)});

  const double l_bound = (n - 1) * ambient.theta() * ambient.epsilon();
  out.push_back({"L_liminf", l_bound - 1e-2 - last.L, at_time(last.t), 1e-2,
                 "final record stands in for the liminf"});

  const double rate = 2.0 / (n - 1);
  if (last.max_h - (n - 1) <= 1e-12 * (n - 1)) {
    out.push_back({"H_decay_exponent", 0.0, at_time(last.t), 0.2, "maxH stationary at n-1"});
  } else {
    const auto fit = fit_mean_curvature_decay(trace, 0.5 * last.t);
    const double rel = fit.samples >= 3 ? std::abs(fit.exponent - rate) / rate : INFINITY;
    out.push_back({"H_decay_exponent", rel - 0.2, "tail t>=" + std::to_string(0.5 * last.t), 0.2,
                   "fitted=" + std::to_string(fit.exponent) + " R2=" + std::to_string(fit.r_squared)});
  }

  out.push_back({"grad_v_decay", last.max_grad_v - 0.1 * first.max_grad_v, at_time(last.t), 0.1,
                 "final / initial < 10%"});
  out.push_back({"w_range_decay", last.w_range - 0.1 * first.w_range, at_time(last.t), 0.1,
                 "final / initial < 10%"});
  return out;
}

void print_reports(std::ostream& os, const std::vector<InequalityReport>& reports) {
  char line[256];
  std::snprintf(line, sizeof line, "%-30s %-6s %14s %14s  %s\n", "check", "status", "excess",
                "tolerance", "location");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-30s %-6s %14.6e %14.6e  %s", r.name.c_str(),
                  r.passed() ? "PASS" : "FAIL", r.worst_violation, r.tolerance, r.location.c_str());
    os << line;
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << '\n';
  }
}

void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
  const auto old = os.precision(17);
  os << "name,worst_violation,location,tolerance\n";
  for (const auto& r : reports)
    os << r.name << ',' << r.worst_violation << ',' << r.location << ',' << r.tolerance << '\n';
  os.precision(old);
}

bool all_passed(const std::vector<InequalityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

}  // namespace imcf::functionals
