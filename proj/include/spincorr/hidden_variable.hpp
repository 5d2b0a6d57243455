#pragma once

// Local hidden-variable model for the singlet.
//
// A single hidden angle phi in [0, pi] with fixed density rho(phi) = sin(phi)/2
// serves every pair of settings. Only the split of [0, pi] into the regions
// where the product A = alpha * beta is +1 or -1 depends on the separation
// angle theta_ab between the two measurement axes.

#include <cstdint>

#include "spincorr/parallel.hpp"
#include "spincorr/rng.hpp"

namespace spincorr {

/// rho(phi) = sin(phi) / 2 on [0, pi].
struct HiddenVarDistribution {
  /// Zero outside [0, pi].
  static double pdf(double phi);
  /// (1 - cos phi) / 2, clamped to [0, 1] outside the support.
  static double cdf(double phi);
  /// arccos(1 - 2u). Throws std::domain_error for u outside [0, 1].
  static double inverse_cdf(double u);
};

/// Inverse-transform draw of phi from a uniform u in [0, 1].
double sample_phi(double u);

struct PartitionMeasures {
  double minus = 0.0;  // measure of the A = -1 region [theta_ab, pi]
  double plus = 0.0;   // measure of the A = +1 region [0, theta_ab)
};

/// Split of the hidden-variable space for one separation angle.
///
/// The plus region is the half-open interval [0, theta_ab); the boundary
/// point phi = theta_ab belongs to the minus region.
class Partition {
 public:
  /// Throws std::domain_error for theta_ab outside [0, pi].
  explicit Partition(double theta_ab);

  double boundary() const { return theta_ab_; }
  bool in_plus(double phi) const { return phi < theta_ab_; }
  /// Value of A = alpha * beta for the singlet on the region containing phi.
  int singlet_product(double phi) const { return in_plus(phi) ? +1 : -1; }
  PartitionMeasures measures() const;

 private:
  double theta_ab_;
};

/// Closed-form (cos^2(theta/2), sin^2(theta/2)).
PartitionMeasures partition_measures(double theta_ab);

/// (+1) * sin^2(theta/2) + (-1) * cos^2(theta/2) = -cos(theta).
double singlet_correlation_analytic(double theta_ab);

/// Single-spin correlation with the region signs swapped: +cos(theta).
double single_electron_correlation_analytic(double theta_ab);

/// One hidden-variable draw with its realized outcomes.
struct SampleRecord {
  double phi = 0.0;
  int alpha = +1;
  int beta = -1;
  int a_product = -1;
};

/// Deterministic outcome assignment for a given alpha and phi.
/// Throws std::domain_error on out-of-range inputs.
SampleRecord classify_singlet(double theta_ab, int alpha, double phi);
SampleRecord classify_single_electron(double theta_ab, int alpha, double phi);

/// Fair coin for alpha, phi by inverse transform, then classify.
SampleRecord sample_singlet_pair(double theta_ab, TrialStream& rng);
SampleRecord sample_single_electron(double theta_ab, TrialStream& rng);

enum class CorrelationMode { analytic, sampled };

struct CorrelationEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sqrt((1 - value^2) / n); 0 for analytic
  std::uint64_t n = 0;
};

/// Binomial standard error of the mean of a +/-1 variable.
double binomial_std_error(double mean, std::uint64_t n);

struct SamplingOptions {
  std::uint64_t seed = 0;
  std::uint32_t stream = 0;
  Execution exec{};
};

/// Mean of A over n seeded singlet draws. Throws std::invalid_argument on n = 0.
CorrelationEstimate singlet_correlation_sampled(double theta_ab, std::uint64_t n,
                                                const SamplingOptions& opts);

/// Analytic mode ignores n and opts.
CorrelationEstimate single_electron_correlation(double theta_ab, CorrelationMode mode,
                                                std::uint64_t n, const SamplingOptions& opts = {});

}  // namespace spincorr
