#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numeric routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "spincorr/bloch_direction.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// One-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

/// Asymptotic KS critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
inline double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

/// Pauli combination n.sigma assembled from the textbook matrices.
inline Mat2 pauli_dot(double nx, double ny, double nz) {
  const Mat2 x{{{0.0, 1.0}, {1.0, 0.0}}};
  const Mat2 y{{{0.0, cd{0, -1}}, {cd{0, 1}, 0.0}}};
  const Mat2 z{{{1.0, 0.0}, {0.0, -1.0}}};
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = nx * x[i][j] + ny * y[i][j] + nz * z[i][j];
  return out;
}

/// Uniform direction on the sphere from a standard-library engine.
inline spincorr::BlochDirection random_direction(std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  spincorr::Vec3 v{g(gen), g(gen), g(gen)};
  while (spincorr::norm(v) < 1e-9) v = {g(gen), g(gen), g(gen)};
  return spincorr::BlochDirection::from_vector(v);
}

inline double raw_dot(const spincorr::BlochDirection& a, const spincorr::BlochDirection& b) {
  const double ax = std::sin(a.theta()) * std::cos(a.phi()), ay = std::sin(a.theta()) * std::sin(a.phi());
  const double bx = std::sin(b.theta()) * std::cos(b.phi()), by = std::sin(b.theta()) * std::sin(b.phi());
  return ax * bx + ay * by + std::cos(a.theta()) * std::cos(b.theta());
}

/// Hemisphere-sign model by enumeration: in-plane hidden angles psi_j on a
/// uniform grid; counts how often sign(lambda.a) == sign(lambda.b) for two
/// coplanar axes separated by theta. Returns the correlation with the
/// side-2 outcome flipped.
inline double hemisphere_correlation_enumerated(double theta, int points) {
  long agree = 0;
  for (int j = 0; j < points; ++j) {
    const double psi = 2.0 * std::numbers::pi * (j + 0.5) / points;
    const double pa = std::cos(psi);
    const double pb = std::cos(psi - theta);
    if ((pa >= 0) == (pb >= 0)) ++agree;
  }
  const double p_agree = static_cast<double>(agree) / points;
  // alpha * beta = -sign(pa) sign(pb)
  return -(2.0 * p_agree - 1.0);
}

}  // namespace oracle
