#include "spincorr/bloch_direction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spincorr {

double dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

double norm(const Vec3& u) { return std::sqrt(dot(u, u)); }

BlochDirection::BlochDirection(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::domain_error("BlochDirection: non-finite angle");
  }
  if (theta < 0.0 || theta > std::numbers::pi) {
    throw std::domain_error("BlochDirection: zenith angle outside [0, pi]");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  // fmod of a tiny negative value can round up to exactly 2*pi
  if (phi >= two_pi) phi = 0.0;
  theta_ = theta;
  phi_ = phi;
}

BlochDirection BlochDirection::from_vector(const Vec3& v) {
  const double n = norm(v);
  if (!std::isfinite(n) || n == 0.0) {
    throw std::domain_error("BlochDirection: cannot normalize zero vector");
  }
  const double z = std::clamp(v.z / n, -1.0, 1.0);
  return {std::acos(z), std::atan2(v.y, v.x)};
}

Vec3 BlochDirection::vector() const {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

double dot(const BlochDirection& u, const BlochDirection& v) {
  return dot(u.vector(), v.vector());
}

double separation_angle(const BlochDirection& u, const BlochDirection& v) {
  return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

}  // namespace spincorr
