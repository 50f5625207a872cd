#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "imcf/errors.hpp"

namespace imcf::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x))
    throw ConfigError(line, "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v, int line) {
  int x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError(line, "expected an integer, got '" + v + "'");
  return x;
}

std::string num(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct Pending {
  std::vector<std::vector<std::string>> mode_lines;
  std::vector<int> mode_line_numbers;
};

void set_key(RunConfig& c, const std::string& section, const std::string& key, const std::string& v,
             int line) {
  auto unknown = [&] { throw ConfigError(line, "unknown key '" + key + "' in [" + section + "]"); };
  if (section == "ambient") {
    if (key == "n") c.n = to_int(v, line);
    else if (key == "epsilon") c.epsilon = to_int(v, line);
    else if (key == "theta") c.theta = to_double(v, line);
    else if (key == "genus") c.genus = to_int(v, line);
    else unknown();
  } else if (section == "initial") {
    if (key == "mode") {
      if (v == "grid") c.symmetric = false;
      else if (v == "symmetric") c.symmetric = true;
      else throw ConfigError(line, "mode must be 'grid' or 'symmetric'");
    } else if (key == "s0") c.s0 = to_double(v, line);
    else if (key == "M") c.grid_points = to_int(v, line);
    else unknown();
  } else if (section == "solver") {
    if (key == "safety") c.solver.safety = to_double(v, line);
    else if (key == "t_end") c.solver.t_end = to_double(v, line);
    else if (key == "record_dt") c.solver.record_dt = to_double(v, line);
    else if (key == "min_h") c.solver.min_h = to_double(v, line);
    else if (key == "max_dt") c.solver.max_dt = to_double(v, line);
    else if (key == "rescale") {
      if (v == "auto") c.solver.rescale.reset();
      else if (v == "true") c.solver.rescale = true;
      else if (v == "false") c.solver.rescale = false;
      else throw ConfigError(line, "rescale must be auto, true or false");
    } else unknown();
  } else if (section == "output") {
    if (key == "trace") c.trace_path = v;
    else if (key == "reports") c.reports_path = v;
    else unknown();
  } else {
    throw ConfigError(line, "key outside a known section");
  }
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  Pending pending;
  std::string section;
  std::string raw;
  int line = 0;
  int last_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto cut = raw.find_first_of("#;");
    const std::string text = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (text.empty()) continue;
    last_line = line;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(line, "unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section != "ambient" && section != "initial" && section != "solver" && section != "output")
        throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      std::istringstream words(text);
      std::vector<std::string> tokens;
      for (std::string w; words >> w;) tokens.push_back(w);
      if (section != "initial" || tokens.front() != "mode")
        throw ConfigError(line, "expected 'key = value'");
      tokens.erase(tokens.begin());
      pending.mode_lines.push_back(std::move(tokens));
      pending.mode_line_numbers.push_back(line);
      continue;
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(line, "empty key or value");
    set_key(c, section, key, value, line);
  }

  // Validation against the library preconditions happens after all keys are
  // known, since the Fourier line arity depends on n.
  const int at = last_line > 0 ? last_line : 1;
  try {
    (void)c.ambient();
  } catch (const std::exception& e) {
    throw ConfigError(at, std::string("[ambient]: ") + e.what());
  }
  for (std::size_t i = 0; i < pending.mode_lines.size(); ++i) {
    const auto& tok = pending.mode_lines[i];
    const int ln = pending.mode_line_numbers[i];
    if (static_cast<int>(tok.size()) != c.n + 1)
      throw ConfigError(ln, "Fourier line needs " + std::to_string(c.n - 1) +
                                " wave numbers and 2 amplitudes");
    FourierMode m;
    for (int a = 0; a < c.n - 1; ++a) m.k.push_back(to_int(tok[a], ln));
    m.amp_cos = to_double(tok[c.n - 1], ln);
    m.amp_sin = to_double(tok[c.n], ln);
    c.modes.push_back(std::move(m));
  }
  if (c.symmetric && !c.modes.empty())
    throw ConfigError(pending.mode_line_numbers.front(), "Fourier lines need mode = grid");
  try {
    c.solver.validate();
    (void)c.initial_state();
  } catch (const std::exception& e) {
    throw ConfigError(at, e.what());
  }
  if (c.trace_path.empty()) throw ConfigError(at, "[output] trace path is required");
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config '" + path + "'");
  return parse_run_config(in);
}

AmbientModel RunConfig::ambient() const { return make_ambient(n, epsilon, theta, genus); }

AmbientModel make_ambient(int n, int epsilon, std::optional<double> theta, std::optional<int> genus) {
  warped::check_epsilon(epsilon);
  if (epsilon == 0) {
    const double t = theta.value_or(std::pow(2.0 * std::numbers::pi, n - 1));
    return AmbientModel(n, 0, t, genus);
  }
  if (genus && !theta) {
    if (n != 3) throw InvalidParameter("genus needs n = 3");
    return AmbientModel::surface_of_genus(*genus);
  }
  if (!theta) throw InvalidParameter("epsilon = -1 needs theta or genus");
  return AmbientModel(n, epsilon, *theta, genus);
}

GraphState RunConfig::initial_state() const {
  const auto amb = ambient();
  if (symmetric) return GraphState::slice(amb, s0);
  return GraphState::fourier(amb, CrossSectionGrid(n - 1, grid_points), s0, modes);
}

std::string RunConfig::resolved() const {
  const auto amb = ambient();
  std::ostringstream os;
  os << "[ambient]\n"
     << "n = " << n << "\n"
     << "epsilon = " << epsilon << "\n"
     << "theta = " << num(amb.theta()) << "\n";
  if (genus) os << "genus = " << *genus << "\n";
  os << "[initial]\n"
     << "mode = " << (symmetric ? "symmetric" : "grid") << "\n"
     << "s0 = " << num(s0) << "\n";
  if (!symmetric) {
    os << "M = " << grid_points << "\n";
    for (const auto& m : modes) {
      os << "mode";
      for (int k : m.k) os << ' ' << k;
      os << ' ' << num(m.amp_cos) << ' ' << num(m.amp_sin) << "\n";
    }
  }
  os << "[solver]\n"
     << "safety = " << num(solver.safety) << "\n"
     << "t_end = " << num(solver.t_end) << "\n"
     << "record_dt = " << num(solver.record_dt) << "\n"
     << "rescale = " << (solver.rescaled() ? "true" : "false") << "\n"
     << "min_h = " << num(solver.min_h) << "\n"
     << "max_dt = " << num(solver.max_dt) << "\n"
     << "[output]\n"
     << "trace = " << trace_path << "\n";
  if (!reports_path.empty()) os << "reports = " << reports_path << "\n";
  return os.str();
}

}  // namespace imcf::cli
