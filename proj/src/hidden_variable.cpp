#include "spincorr/hidden_variable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spincorr {

namespace {

void check_separation(double theta_ab) {
  if (!(theta_ab >= 0.0 && theta_ab <= std::numbers::pi)) {
    throw std::domain_error("separation angle outside [0, pi]");
  }
}

void check_record_inputs(double theta_ab, int alpha, double phi) {
  check_separation(theta_ab);
  if (alpha != 1 && alpha != -1) throw std::domain_error("alpha must be +1 or -1");
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) throw std::domain_error("phi outside [0, pi]");
}

SampleRecord make_record(double phi, int alpha, int product) {
  return {phi, alpha, product * alpha, product};
}

}  // namespace

double HiddenVarDistribution::pdf(double phi) {
  if (phi < 0.0 || phi > std::numbers::pi) return 0.0;
  return 0.5 * std::sin(phi);
}

double HiddenVarDistribution::cdf(double phi) {
  if (phi <= 0.0) return 0.0;
  if (phi >= std::numbers::pi) return 1.0;
  return 0.5 * (1.0 - std::cos(phi));
}

double HiddenVarDistribution::inverse_cdf(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("uniform variate outside [0, 1]");
  return std::acos(1.0 - 2.0 * u);
}

double sample_phi(double u) { return HiddenVarDistribution::inverse_cdf(u); }

Partition::Partition(double theta_ab) : theta_ab_(theta_ab) { check_separation(theta_ab); }

PartitionMeasures Partition::measures() const {
  const double c = std::cos(0.5 * theta_ab_);
  const double s = std::sin(0.5 * theta_ab_);
  return {c * c, s * s};
}

PartitionMeasures partition_measures(double theta_ab) { return Partition(theta_ab).measures(); }

double singlet_correlation_analytic(double theta_ab) {
  const auto m = partition_measures(theta_ab);
  return (+1.0) * m.plus + (-1.0) * m.minus;
}

double single_electron_correlation_analytic(double theta_ab) {
  const auto m = partition_measures(theta_ab);
  return (-1.0) * m.plus + (+1.0) * m.minus;
}

SampleRecord classify_singlet(double theta_ab, int alpha, double phi) {
  check_record_inputs(theta_ab, alpha, phi);
  return make_record(phi, alpha, Partition(theta_ab).singlet_product(phi));
}

SampleRecord classify_single_electron(double theta_ab, int alpha, double phi) {
  check_record_inputs(theta_ab, alpha, phi);
  return make_record(phi, alpha, -Partition(theta_ab).singlet_product(phi));
}

SampleRecord sample_singlet_pair(double theta_ab, TrialStream& rng) {
  const int alpha = rng.sign();
  return classify_singlet(theta_ab, alpha, sample_phi(rng.uniform()));
}

SampleRecord sample_single_electron(double theta_ab, TrialStream& rng) {
  const int alpha = rng.sign();
  return classify_single_electron(theta_ab, alpha, sample_phi(rng.uniform()));
}

double binomial_std_error(double mean, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("standard error of an empty sample");
  return std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(n));
}

namespace {

template <class SampleFn>
CorrelationEstimate mean_product(double theta_ab, std::uint64_t n, const SamplingOptions& opts,
                                 SampleFn sample) {
  check_separation(theta_ab);
  if (n == 0) throw std::invalid_argument("trial count must be at least 1");
  const StreamFamily family(opts.seed, opts.stream);
  const auto tally = parallel_tally<2>(n, opts.exec, [&](std::uint64_t t, auto& local) {
    auto rng = family.trial(t);
    ++local[sample(theta_ab, rng).a_product > 0 ? 1 : 0];
  });
  const double mean =
      (static_cast<double>(tally[1]) - static_cast<double>(tally[0])) / static_cast<double>(n);
  return {mean, binomial_std_error(mean, n), n};
}

}  // namespace

CorrelationEstimate singlet_correlation_sampled(double theta_ab, std::uint64_t n,
                                                const SamplingOptions& opts) {
  return mean_product(theta_ab, n, opts, sample_singlet_pair);
}

CorrelationEstimate single_electron_correlation(double theta_ab, CorrelationMode mode,
                                                std::uint64_t n, const SamplingOptions& opts) {
  if (mode == CorrelationMode::analytic) {
    return {single_electron_correlation_analytic(theta_ab), 0.0, 0};
  }
  return mean_product(theta_ab, n, opts, sample_single_electron);
}

}  // namespace spincorr
