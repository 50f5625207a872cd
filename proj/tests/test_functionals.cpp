#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "imcf/errors.hpp"
#include "imcf/functionals.hpp"
#include "imcf/solver.hpp"
#include "oracles.hpp"

using namespace imcf;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double s0 = 1.0, ca = 0.1, cb = 0.05;

GraphState standard(int m) {
  const FourierMode modes[] = {{{1, 0}, ca, 0.0}, {{0, 1}, cb, 0.0}};
  return GraphState::fourier(AmbientModel::flat_torus(3), CrossSectionGrid(2, m), s0, modes);
}

GraphState single_mode(double delta, int m = 64) {
  const FourierMode modes[] = {{{1, 0}, delta, 0.0}};
  return GraphState::fourier(AmbientModel::flat_torus(3), CrossSectionGrid(2, m), 1.0, modes);
}

// I = int e^u H e^{2u} W over the torus with exact derivatives.
double oracle_i(int m) {
  const double h = 2 * kPi / m;
  double sum = 0.0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double t1 = i * h, t2 = j * h;
      const double u = s0 + ca * std::cos(t1) + cb * std::cos(t2);
      const auto g = oracle::half_space_graph(3, u, {-ca * std::sin(t1), -cb * std::sin(t2)},
                                              {-ca * std::cos(t1), 0.0, 0.0, -cb * std::cos(t2)});
      sum += std::exp(3 * u) * g.mean_curvature * g.w;
    }
  return sum * h * h;
}

flow::FlowResult slice_flow(const AmbientModel& amb, double s, double t_end) {
  flow::FlowConfig cfg;
  cfg.t_end = t_end;
  cfg.record_dt = 0.1;
  return flow::run(GraphState::slice(amb, s), cfg);
}

}  // namespace

TEST_CASE("functionals on slices") {
  const auto amb = AmbientModel::flat_torus(3);
  const double theta = amb.theta();
  const auto f = functionals::functionals_of(GraphState::slice(amb, 0.0));
  CHECK(f.I == Approx(2 * theta).epsilon(1e-15));
  CHECK(f.J == Approx(theta).epsilon(1e-15));
  CHECK(f.K == Approx(theta).epsilon(1e-15));
  CHECK(f.anorm == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(f.L) < 1e-13);

  const auto g = AmbientModel::surface_of_genus(2);
  const auto h = functionals::functionals_of(GraphState::slice(g, warped::s_from_r(2.0, -1)));
  CHECK(h.I == Approx(48 * kPi).epsilon(1e-13));
  CHECK(h.K == Approx(32 * kPi).epsilon(1e-13));
  CHECK(h.J == Approx(32 * kPi).epsilon(1e-13));
  CHECK(h.L == Approx(-8 * kPi).epsilon(1e-13));

  for (double s : {0.8, 1.5, 3.0}) {
    const auto q = functionals::functionals_of(GraphState::slice(g, s));
    CHECK(q.L == Approx(2 * g.theta() * -1).epsilon(1e-10));
    const auto p = functionals::functionals_of(GraphState::slice(AmbientModel::flat_torus(4), s - 1.0));
    CHECK(std::abs(p.L) < 1e-12 * p.I);
  }
}

TEST_CASE("functionals converge to their continuum values") {
  const double j_exact = 4 * kPi * kPi * std::exp(3 * s0) * std::cyl_bessel_i(0.0, 3 * ca) * std::cyl_bessel_i(0.0, 3 * cb);
  CHECK(functionals::functionals_of(standard(32)).J == Approx(j_exact).epsilon(1e-12));

  const double i_exact = oracle_i(256);
  const double e32 = std::abs(functionals::functionals_of(standard(32)).I - i_exact);
  const double e64 = std::abs(functionals::functionals_of(standard(64)).I - i_exact);
  CHECK(e64 / i_exact < 1e-4);
  CHECK(std::log2(e32 / e64) == Approx(2.0).epsilon(0.1));

  const auto f64 = functionals::functionals_of(standard(64));
  const auto f128 = functionals::functionals_of(standard(128));
  const auto f32 = functionals::functionals_of(standard(32));
  CHECK(std::log2(std::abs(f32.L - f128.L) / std::abs(f64.L - f128.L)) > 1.8);
}

TEST_CASE("Alexandrov-Fenchel deficit") {
  CHECK(std::abs(functionals::af_deficit(GraphState::slice(AmbientModel::flat_torus(3), 0.7))) < 1e-10);
  CHECK(std::abs(functionals::af_deficit(GraphState::slice(AmbientModel::surface_of_genus(3), 1.3))) < 1e-10);
  CHECK(std::abs(functionals::af_deficit(GraphState::slice(AmbientModel(5, -1, 2.0), 2.2))) < 1e-10);

  const auto st = single_mode(0.2);
  const double d = functionals::af_deficit(st);
  CHECK(d > 1e-3);
  const auto f = functionals::functionals_of(st);
  CHECK(functionals::af_deficit_from_l(st.ambient(), f) == Approx(d).epsilon(1e-12));
  for (const auto& amb : {AmbientModel::surface_of_genus(2), AmbientModel(4, -1, 3.0)}) {
    const auto fs = functionals::functionals_of(GraphState::slice(amb, 1.7));
    CHECK(std::abs(functionals::af_deficit(amb, fs) - functionals::af_deficit_from_l(amb, fs)) < 1e-12 * fs.I);
  }
}

TEST_CASE("Brendle deficit") {
  CHECK(std::abs(functionals::brendle_deficit(GraphState::slice(AmbientModel::flat_torus(3), 0.2))) < 1e-10);
  CHECK(std::abs(functionals::brendle_deficit(GraphState::slice(AmbientModel::surface_of_genus(2), 1.0))) < 1e-10);
  CHECK(functionals::brendle_deficit(single_mode(0.2)) > 0.0);

  const double deltas[] = {0.05, 0.1, 0.2};
  double d[3];
  for (int k = 0; k < 3; ++k) d[k] = functionals::brendle_deficit(single_mode(deltas[k]));
  CHECK(std::log2(d[1] / d[0]) == Approx(2.0).epsilon(0.05));
  CHECK(std::log2(d[2] / d[1]) == Approx(2.0).epsilon(0.05));

  const FourierMode bad[] = {{{3, 0}, 3.0, 0.0}};
  CHECK_THROWS_AS(functionals::brendle_deficit(GraphState::fourier(AmbientModel::flat_torus(3), CrossSectionGrid(2, 16), 0.0, bad)),
                  NonMeanConvex);
}

TEST_CASE("deficits stay nonnegative on a family of graphs") {
  for (double delta : {0.01, 0.05, 0.15, 0.3})
    for (int k : {1, 2}) {
      const FourierMode modes[] = {{{k, 1}, delta, 0.5 * delta}};
      const auto st = GraphState::fourier(AmbientModel::flat_torus(3), CrossSectionGrid(2, 32), 0.5, modes);
      CHECK(functionals::af_deficit(st) >= -1e-8);
      CHECK(functionals::brendle_deficit(st) >= -1e-8);
    }
}

TEST_CASE("dI/dt identity") {
  const auto slice = GraphState::on_grid(AmbientModel::flat_torus(3), CrossSectionGrid(2, 16), Field(256, 0.4));
  const double i = functionals::functionals_of(slice).I;
  CHECK(functionals::didt_prediction(slice) == Approx(1.5 * i).epsilon(1e-13));
  CHECK(functionals::didt_identity_check(slice) < 1e-6 * i);

  const auto st = standard(64);
  const double pred = functionals::didt_prediction(st);
  CHECK(functionals::didt_identity_check(st, 1e-4) / pred < 1e-4);

  // Differences of residuals isolate the probe error, which is quadratic.
  const double r1 = functionals::didt_identity_check(st, 4e-2);
  const double r2 = functionals::didt_identity_check(st, 2e-2);
  const double r3 = functionals::didt_identity_check(st, 1e-2);
  CHECK(std::log2(std::abs(r1 - r2) / std::abs(r2 - r3)) == Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS(functionals::didt_identity_check(st, 0.0), InvalidParameter);
}

TEST_CASE("monotonicity report on slice flows") {
  for (const auto& amb : {AmbientModel::flat_torus(3), AmbientModel::surface_of_genus(2)}) {
    const auto res = slice_flow(amb, 1.0, 2.0);
    const auto reports = functionals::monotonicity_report(res.trace);
    REQUIRE(reports.size() == 5);
    CHECK(functionals::all_passed(reports));
    for (const auto& r : res.trace.records) {
      CHECK(r.L == Approx(res.trace.records.front().L).epsilon(1e-10));
      CHECK(std::abs(r.jk_norm) < 1e-12);
    }
  }
}

TEST_CASE("monotonicity report detects violations") {
  auto trace = slice_flow(AmbientModel::flat_torus(3), 0.0, 1.0).trace;
  auto bumped = trace;
  bumped.records[5].L += 1.0;
  auto reports = functionals::monotonicity_report(bumped);
  CHECK(reports[0].passed());
  CHECK_FALSE(reports[1].passed());
  CHECK(reports[1].name == "L_nonincreasing");
  CHECK(reports[1].location == "t=0.4");
  CHECK(reports[1].worst_violation == Approx(1.0 / 0.2 - 10 * 0.01).epsilon(1e-9));
  CHECK_FALSE(functionals::all_passed(reports));

  bumped = trace;
  bumped.records[3].jk_norm -= 0.5;
  reports = functionals::monotonicity_report(bumped);
  CHECK_FALSE(reports[0].passed());
  CHECK(reports[0].location == "t=0.2");

  bumped = trace;
  bumped.records[7].J = bumped.records[7].K + 1e-6;
  reports = functionals::monotonicity_report(bumped);
  CHECK_FALSE(reports[4].passed());
  CHECK(reports[4].location == "t=0.7");

  bumped = trace;
  bumped.records[4].area *= 1.05;
  CHECK_FALSE(functionals::monotonicity_report(bumped)[2].passed());

  trace.records.resize(2);
  CHECK_THROWS_AS(functionals::monotonicity_report(trace), InsufficientTrace);
}

TEST_CASE("monotonicity report on a short perturbed flow") {
  flow::FlowConfig cfg;
  cfg.t_end = 1.0;
  cfg.record_dt = 0.05;
  const auto res = flow::run(standard(32), cfg);
  const auto reports = functionals::monotonicity_report(res.trace);
  CHECK(reports[2].passed());
  CHECK(reports[3].passed());
  CHECK(reports[0].passed());
}

TEST_CASE("asymptotics report") {
  for (const auto& amb : {AmbientModel::flat_torus(3), AmbientModel::surface_of_genus(2)}) {
    const auto res = slice_flow(amb, 1.0, 10.0);
    for (const auto& r : res.trace.records)
      CHECK(r.J / (amb.theta() * std::pow(r.anorm, 1.5)) == Approx(1.0).epsilon(1e-12));
    const auto reports = functionals::asymptotics_report(res.trace, amb);
    REQUIRE(reports.size() == 5);
    CHECK(functionals::all_passed(reports));
  }
  const auto short_run = slice_flow(AmbientModel::flat_torus(3), 0.0, 5.0);
  CHECK_THROWS_AS(functionals::asymptotics_report(short_run.trace, AmbientModel::flat_torus(3)), InsufficientTrace);
}

TEST_CASE("mean curvature decay fit recovers a synthetic rate") {
  FlowTrace trace;
  trace.n = 3;
  for (int k = 0; k <= 100; ++k) {
    TraceRecord r;
    r.t = 0.1 * k;
    r.max_h = 2.0 + 0.3 * r.t * std::exp(-1.1 * r.t);
    trace.records.push_back(r);
  }
  const auto fit = functionals::fit_mean_curvature_decay(trace, 5.0);
  CHECK(fit.exponent == Approx(1.1).epsilon(1e-10));
  CHECK(fit.log_c == Approx(std::log(0.3)).epsilon(1e-10));
  CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
  CHECK(fit.samples == 51);
}

TEST_CASE("report and trace serialization") {
  const auto res = slice_flow(AmbientModel::flat_torus(3), 0.0, 0.3);
  std::ostringstream csv;
  functionals::write_reports_csv(csv, functionals::monotonicity_report(res.trace));
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "name,worst_violation,location,tolerance");
  std::getline(in, line);
  CHECK(line.rfind("jk_norm_nondecreasing,", 0) == 0);

  std::ostringstream trace_csv;
  write_trace_csv(trace_csv, res.trace, "first\nsecond\n");
  std::istringstream tin(trace_csv.str());
  std::getline(tin, line);
  CHECK(line == "# first");
  std::getline(tin, line);
  CHECK(line == "# second");
  std::getline(tin, line);
  CHECK(line == kTraceCsvHeader);
  std::getline(tin, line);
  CHECK(std::count(line.begin(), line.end(), ',') == 16);
  std::ostringstream table;
  functionals::print_reports(table, functionals::monotonicity_report(res.trace));
  CHECK(table.str().find("PASS") != std::string::npos);
}
