#include "imcf/warped_geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "imcf/errors.hpp"

namespace imcf {

AmbientModel::AmbientModel(int n, int epsilon, double theta, std::optional<int> genus)
    : n_(n), epsilon_(epsilon), theta_(theta), genus_(genus) {
  if (n < 3) throw InvalidParameter("ambient dimension n must be >= 3, got " + std::to_string(n));
  warped::check_epsilon(epsilon);
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw InvalidParameter("cross-section area theta must be positive and finite");
  if (genus && *genus < 1) throw InvalidParameter("genus must be >= 1");
}

AmbientModel AmbientModel::flat_torus(int n) {
  return AmbientModel(n, 0, std::pow(2.0 * std::numbers::pi, n - 1));
}

AmbientModel AmbientModel::surface_of_genus(int genus) {
  if (genus < 1) throw InvalidParameter("genus must be >= 1, got " + std::to_string(genus));
  if (genus == 1) return AmbientModel(3, 0, 4.0 * std::numbers::pi, genus);
  return AmbientModel(3, -1, 4.0 * std::numbers::pi * (genus - 1), genus);
}

double AmbientModel::s_min() const noexcept {
  return epsilon_ == 0 ? -std::numeric_limits<double>::infinity() : std::numbers::ln2;
}

namespace warped {

void check_epsilon(int epsilon) {
  if (epsilon != 0 && epsilon != -1)
    throw InvalidParameter("epsilon must be 0 or -1, got " + std::to_string(epsilon));
}

namespace {

void check_s(double s, int epsilon) {
  check_epsilon(epsilon);
  if (epsilon == -1 && !(s >= std::numbers::ln2))
    throw DomainError("s=" + std::to_string(s) + " below log 2 for eps=-1");
}

}  // namespace

double lambda(double s, int epsilon) {
  check_s(s, epsilon);
  if (epsilon == 0) return std::exp(s);
  return 0.25 * std::exp(s) + std::exp(-s);
}

double lambda_dot(double s, int epsilon) {
  check_s(s, epsilon);
  if (epsilon == 0) return std::exp(s);
  return 0.25 * std::exp(s) - std::exp(-s);
}

double lambda_ddot(double s, int epsilon) { return lambda(s, epsilon); }

double rho(double r, int epsilon) {
  check_epsilon(epsilon);
  const double q = r * r + epsilon;
  if (!(epsilon == 0 ? r > 0.0 : r >= 1.0)) throw DomainError("rho_eps undefined at r=" + std::to_string(r));
  return std::sqrt(q);
}

double s_from_r(double r, int epsilon) {
  check_epsilon(epsilon);
  if (epsilon == 0) {
    if (!(r > 0.0)) throw DomainError("s(r) needs r > 0 for eps=0");
    return std::log(r);
  }
  if (!(r >= 1.0)) throw DomainError("s(r) needs r >= 1 for eps=-1");
  return std::log(2.0 * std::sqrt(r * r - 1.0) + 2.0 * r);
}

double r_from_s(double s, int epsilon) { return lambda(s, epsilon); }

}  // namespace warped
}  // namespace imcf
