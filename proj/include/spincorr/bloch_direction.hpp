#pragma once

#include <array>

namespace spincorr {

/// Plain Cartesian 3-vector.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double dot(const Vec3& u, const Vec3& v);
Vec3 cross(const Vec3& u, const Vec3& v);
double norm(const Vec3& u);

/// A spin measurement axis on the unit sphere, stored as zenith angle
/// theta in [0, pi] and azimuth phi in [0, 2*pi).
///
/// The constructor validates theta and wraps phi into range; the Cartesian
/// unit vector is derived on demand.
class BlochDirection {
 public:
  /// Defaults to +z.
  BlochDirection() = default;

  /// Throws std::domain_error when theta lies outside [0, pi] or either
  /// angle is not finite.
  BlochDirection(double theta, double phi);

  /// Normalizes a non-zero Cartesian vector. Throws std::domain_error on a
  /// zero or non-finite vector.
  static BlochDirection from_vector(const Vec3& v);

  /// Direction in the x-z half plane (azimuth 0) at zenith angle theta.
  static BlochDirection in_xz_plane(double theta) { return {theta, 0.0}; }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  Vec3 vector() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

double dot(const BlochDirection& u, const BlochDirection& v);

/// Separation angle arccos(u.v) in [0, pi], clamped against roundoff.
double separation_angle(const BlochDirection& u, const BlochDirection& v);

}  // namespace spincorr
