#pragma once

// Sectioned key=value run configuration for `imcf flow`.
//
//   [ambient]   n, epsilon, theta | genus
//   [initial]   mode = grid | symmetric, s0, M, and Fourier lines
//               "mode k1 ... k_{n-1} amp_cos amp_sin"
//   [solver]    safety, t_end, record_dt, rescale (auto|true|false), min_h, max_dt
//   [output]    trace, reports
//
// '#' and ';' start comments; blank lines are ignored.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imcf/hypersurface.hpp"
#include "imcf/solver.hpp"
#include "imcf/warped_geometry.hpp"

namespace imcf::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct RunConfig {
  int n = 3;
  int epsilon = 0;
  std::optional<double> theta;
  std::optional<int> genus;

  bool symmetric = false;
  double s0 = 1.0;
  int grid_points = 64;
  std::vector<FourierMode> modes;

  flow::FlowConfig solver;

  std::string trace_path;
  std::string reports_path;

  AmbientModel ambient() const;
  GraphState initial_state() const;
  /// Fully resolved configuration, one "key = value" per line, round-trippable.
  std::string resolved() const;
};

/// Ambient model from CLI-style inputs: eps = 0 defaults to the 2pi-torus,
/// eps = -1 needs theta, or genus when n = 3.
AmbientModel make_ambient(int n, int epsilon, std::optional<double> theta, std::optional<int> genus);

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

}  // namespace imcf::cli
