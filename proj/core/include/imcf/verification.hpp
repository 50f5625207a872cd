#pragma once

// Verification suites: each criterion runs a fixed experiment, compares it
// against pinned tolerances and reports one pass/fail line.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "imcf/solver.hpp"

namespace imcf::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<std::string> details;
};

CriterionResult slice_equality();
CriterionResult kottler_round_trip(std::uint64_t seed = 20240611);
CriterionResult scalar_curvature_identity();
CriterionResult flux_mass_limit();
CriterionResult embedding_consistency();
CriterionResult exact_area_law();

/// n = 3, eps = 0, M = 64, u0 = 1 + 0.1 cos t1 + 0.05 cos t2, t_end = 12,
/// record_dt = 0.1.
flow::FlowResult standard_perturbed_run();

CriterionResult monotonicity(const flow::FlowResult& run, double run_seconds);
CriterionResult asymptotic_limits(const flow::FlowResult& run, double run_seconds);
CriterionResult discretization_convergence();
CriterionResult inequality_sampling(std::uint64_t seed = 7);
CriterionResult corollary_consistency();

inline constexpr std::string_view kSuites[] = {"slices", "geometry", "monotonicity",
                                               "asymptotics", "mass", "all"};

/// Runs the named suite; throws InvalidParameter for an unknown name.
std::vector<CriterionResult> run_suite(std::string_view suite);

void print_result(std::ostream& os, const CriterionResult& result, bool verbose = true);

}  // namespace imcf::verify
