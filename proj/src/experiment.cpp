#include "spincorr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spincorr/quantum_core.hpp"
#include "spincorr/rng.hpp"

namespace spincorr {

namespace {

constexpr std::uint32_t kTransferStream = 16;

void check_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("trial count must be at least 1");
}

int hemisphere_sign(const Vec3& lambda, const Vec3& axis) { return dot(lambda, axis) >= 0.0 ? +1 : -1; }

Vec3 uniform_on_sphere(TrialStream& rng) {
  const double z = 1.0 - 2.0 * rng.uniform();
  const double az = 2.0 * std::numbers::pi * rng.uniform();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(az), rho * std::sin(az), z};
}

std::array<std::pair<BlochDirection, BlochDirection>, 4> pair_settings(const ChshSettings& s) {
  return {{{s.a, s.b}, {s.a, s.b_prime}, {s.a_prime, s.b}, {s.a_prime, s.b_prime}}};
}

void finish(ChshReport& report) {
  const auto& p = report.pairs;
  report.s = chsh_combination(p[0].estimate.value, p[1].estimate.value, p[2].estimate.value,
                              p[3].estimate.value);
  double var = 0.0;
  for (const auto& pair : p) var += pair.estimate.std_error * pair.estimate.std_error;
  report.s_std_error = std::sqrt(var);
}

}  // namespace

int channel_of(int alpha, int beta) {
  if (alpha > 0) return beta < 0 ? 1 : 3;
  return beta > 0 ? 2 : 4;
}

SettingSeries run_series(const BlochDirection& a, const BlochDirection& b, std::uint64_t n,
                         SeriesModel model, std::uint64_t seed, std::uint32_t stream,
                         Execution exec) {
  check_count(n);
  const StreamFamily family(seed, stream);
  SettingSeries series{a, b, {}};

  if (model == SeriesModel::hv) {
    const double theta_ab = separation_angle(a, b);
    series.counts = parallel_tally<4>(n, exec, [&](std::uint64_t t, auto& local) {
      auto rng = family.trial(t);
      const auto rec = sample_singlet_pair(theta_ab, rng);
      ++local[channel_of(rec.alpha, rec.beta) - 1];
    });
  } else {
    const auto weights = decompose_eigenbasis(a, b);
    std::array<double, 3> cumulative{};
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) cumulative[k] = acc += weights.channels[k].weight.real();
    series.counts = parallel_tally<4>(n, exec, [&](std::uint64_t t, auto& local) {
      auto rng = family.trial(t);
      const double u = rng.uniform();
      std::size_t k = 0;
      while (k < 3 && u >= cumulative[k]) ++k;
      ++local[k];
    });
  }
  return series;
}

CorrelationEstimate estimate_correlation(const SettingSeries& series) {
  const std::uint64_t n = series.total();
  if (n == 0) throw std::invalid_argument("cannot estimate a correlation from an empty series");
  const auto& c = series.counts;
  const double signed_sum = -static_cast<double>(c[0]) - static_cast<double>(c[1]) +
                            static_cast<double>(c[2]) + static_cast<double>(c[3]);
  const double mean = signed_sum / static_cast<double>(n);
  return {mean, binomial_std_error(mean, n), n};
}

std::string_view to_string(ChshModel model) {
  switch (model) {
    case ChshModel::quantum_exact: return "quantum-exact";
    case ChshModel::hv_per_setting: return "hv-per-setting";
    case ChshModel::quantum_sampler: return "quantum-sampler";
    case ChshModel::transfer_baseline: return "transfer-baseline";
  }
  return "unknown";
}

ChshSettings ChshSettings::canonical() {
  constexpr double pi = std::numbers::pi;
  return {BlochDirection::in_xz_plane(0.0), BlochDirection::in_xz_plane(pi / 2),
          BlochDirection::in_xz_plane(pi / 4), BlochDirection::in_xz_plane(3 * pi / 4)};
}

double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp) {
  return e_ab - e_abp + e_apb + e_apbp;
}

ChshReport run_chsh(const ChshSettings& settings, std::uint64_t n_per_pair, ChshModel model,
                    std::uint64_t seed, Execution exec) {
  if (model == ChshModel::transfer_baseline) {
    return run_transfer_baseline(settings, n_per_pair, seed, exec);
  }
  check_count(n_per_pair);
  ChshReport report;
  report.model = model;
  report.settings = settings;
  const auto pairs = pair_settings(settings);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& [first, second] = pairs[i];
    PairResult& out = report.pairs[i];
    out.first = first;
    out.second = second;
    if (model == ChshModel::quantum_exact) {
      out.estimate = {correlation_exact(first, second), 0.0, 0};
    } else {
      const auto series_model =
          model == ChshModel::hv_per_setting ? SeriesModel::hv : SeriesModel::quantum_sampler;
      const auto series =
          run_series(first, second, n_per_pair, series_model, seed, kChshPairStreams[i], exec);
      out.estimate = estimate_correlation(series);
      out.counts = series.counts;
    }
  }
  finish(report);
  return report;
}

ChshReport run_transfer_baseline(const ChshSettings& settings, std::uint64_t n,
                                 std::uint64_t seed, Execution exec) {
  check_count(n);
  const auto pairs = pair_settings(settings);
  std::array<std::pair<Vec3, Vec3>, 4> axes;
  for (std::size_t i = 0; i < 4; ++i) axes[i] = {pairs[i].first.vector(), pairs[i].second.vector()};

  const StreamFamily family(seed, kTransferStream);
  const auto tally = parallel_tally<16>(n, exec, [&](std::uint64_t t, auto& local) {
    auto rng = family.trial(t);
    const Vec3 lambda = uniform_on_sphere(rng);
    for (std::size_t i = 0; i < 4; ++i) {
      const int alpha = hemisphere_sign(lambda, axes[i].first);
      const int beta = -hemisphere_sign(lambda, axes[i].second);
      ++local[4 * i + static_cast<std::size_t>(channel_of(alpha, beta) - 1)];
    }
  });

  ChshReport report;
  report.model = ChshModel::transfer_baseline;
  report.settings = settings;
  for (std::size_t i = 0; i < 4; ++i) {
    SettingSeries series{pairs[i].first, pairs[i].second,
                         {tally[4 * i], tally[4 * i + 1], tally[4 * i + 2], tally[4 * i + 3]}};
    report.pairs[i] = {series.a, series.b, estimate_correlation(series), series.counts};
  }
  finish(report);
  return report;
}

double transfer_baseline_correlation(double theta_ab) {
  return -1.0 + 2.0 * theta_ab / std::numbers::pi;
}

}  // namespace spincorr
