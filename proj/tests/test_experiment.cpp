#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "spincorr/experiment.hpp"
#include "spincorr/quantum_core.hpp"

using namespace spincorr;
constexpr double pi = std::numbers::pi;

namespace {

BlochDirection plane(double theta) { return BlochDirection::in_xz_plane(theta); }

double within_sigma(double observed, double expected_p, std::uint64_t n) {
  return std::abs(observed - expected_p) / std::sqrt(expected_p * (1 - expected_p) / n);
}

}  // namespace

TEST_CASE("channel numbering follows the joint eigenbasis") {
  CHECK(channel_of(+1, -1) == 1);
  CHECK(channel_of(-1, +1) == 2);
  CHECK(channel_of(+1, +1) == 3);
  CHECK(channel_of(-1, -1) == 4);
  for (int k = 1; k <= 4; ++k) {
    const auto [alpha, beta] = channel_signs(k);
    CHECK(channel_of(alpha, beta) == k);
  }
}

TEST_CASE("estimate_correlation arithmetic") {
  SettingSeries s{plane(0), plane(1), {25, 25, 25, 25}};
  CHECK(estimate_correlation(s).value == 0.0);
  CHECK(estimate_correlation(s).std_error == doctest::Approx(0.1));
  s.counts = {50, 50, 0, 0};
  CHECK(estimate_correlation(s).value == -1.0);
  CHECK(estimate_correlation(s).std_error == 0.0);
  s.counts = {30, 30, 20, 20};
  CHECK(estimate_correlation(s).value == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(s.total() == 100);
  s.counts = {0, 0, 0, 0};
  CHECK_THROWS_AS(estimate_correlation(s), std::invalid_argument);
}

TEST_CASE("run_series: equal settings never give parallel coincidences") {
  for (auto model : {SeriesModel::hv, SeriesModel::quantum_sampler}) {
    const auto s = run_series(plane(0.7), plane(0.7), 100000, model, 1);
    CHECK(s.counts[2] == 0);
    CHECK(s.counts[3] == 0);
    CHECK(s.total() == 100000);
  }
  CHECK_THROWS_AS(run_series(plane(0), plane(1), 0, SeriesModel::hv, 1), std::invalid_argument);
}

TEST_CASE("run_series: channel proportions at pi/2 and pi/3") {
  const std::uint64_t n = 1'000'000;
  const auto perp = run_series(plane(0), plane(pi / 2), n, SeriesModel::hv, 2);
  for (auto c : perp.counts) CHECK(within_sigma(double(c) / n, 0.25, n) < 4.0);

  const auto third = run_series(plane(0), plane(pi / 3), n, SeriesModel::hv, 3);
  CHECK(within_sigma(double(third.counts[0] + third.counts[1]) / n, 0.75, n) < 4.0);
}

TEST_CASE("quantum sampler reproduces the Born weights for 3D settings") {
  std::mt19937_64 gen(4);
  const std::uint64_t n = 200000;
  for (int i = 0; i < 5; ++i) {
    const auto a = oracle::random_direction(gen);
    const auto b = oracle::random_direction(gen);
    const auto s = run_series(a, b, n, SeriesModel::quantum_sampler, 5, i);
    const double c = oracle::raw_dot(a, b);
    const std::array<double, 4> p{0.25 * (1 + c), 0.25 * (1 + c), 0.25 * (1 - c), 0.25 * (1 - c)};
    for (int k = 0; k < 4; ++k) {
      if (p[k] > 1e-6) CHECK(within_sigma(double(s.counts[k]) / n, p[k], n) < 4.0);
    }
  }
}

TEST_CASE("hv series with full 3D settings use the separation angle") {
  const BlochDirection a(0.9, 0.3), b(2.0, 4.0);
  const std::uint64_t n = 1'000'000;
  const auto est = estimate_correlation(run_series(a, b, n, SeriesModel::hv, 6));
  const double target = -oracle::raw_dot(a, b);
  CHECK(std::abs(est.value - target) < 4 * std::sqrt((1 - target * target) / n));
}

TEST_CASE("estimator consistency over repeated runs") {
  const double theta = 1.0;
  const double target = -std::cos(theta);
  int inside = 0;
  for (std::uint32_t run = 0; run < 1000; ++run) {
    const auto est = estimate_correlation(run_series(plane(0), plane(theta), 10000, SeriesModel::hv, 77, run));
    if (std::abs(est.value - target) < 5 * est.std_error) ++inside;
  }
  CHECK(inside >= 990);
}

TEST_CASE("pair series are keyed by stream, not by execution order") {
  const auto settings = ChshSettings::canonical();
  const auto report = run_chsh(settings, 20000, ChshModel::hv_per_setting, 99, {3});
  const std::array<std::pair<BlochDirection, BlochDirection>, 4> pairs{
      {{settings.a, settings.b}, {settings.a, settings.b_prime}, {settings.a_prime, settings.b},
       {settings.a_prime, settings.b_prime}}};
  for (int i = 3; i >= 0; --i) {
    const auto s = run_series(pairs[i].first, pairs[i].second, 20000, SeriesModel::hv, 99,
                              kChshPairStreams[i], {1});
    CHECK(report.pairs[i].counts.value() == s.counts);
  }
}

TEST_CASE("CHSH with exact correlations") {
  const auto canonical = run_chsh(ChshSettings::canonical(), 1, ChshModel::quantum_exact, 0);
  // plug E = -cos(theta) into E(a,b) - E(a,b') + E(a',b) + E(a',b')
  const double expected = -std::cos(pi / 4) + std::cos(3 * pi / 4) - std::cos(pi / 4) - std::cos(pi / 4);
  CHECK(std::abs(canonical.s - expected) < 1e-12);
  CHECK(std::abs(canonical.s + 2 * std::sqrt(2.0)) < 1e-12);
  CHECK(canonical.s_std_error == 0.0);
  CHECK_FALSE(canonical.pairs[0].counts.has_value());

  const BlochDirection d(0.4, 1.0);
  const auto equal = run_chsh({d, d, d, d}, 1, ChshModel::quantum_exact, 0);
  CHECK(std::abs(equal.s + 2.0) < 1e-12);
}

TEST_CASE("report S is assembled from the stored estimates") {
  const auto r = run_chsh(ChshSettings::canonical(), 5000, ChshModel::quantum_sampler, 8);
  const auto& p = r.pairs;
  CHECK(r.s == chsh_combination(p[0].estimate.value, p[1].estimate.value, p[2].estimate.value, p[3].estimate.value));
  CHECK(r.model == ChshModel::quantum_sampler);
  CHECK(to_string(r.model) == "quantum-sampler");
  CHECK_THROWS_AS(run_chsh(ChshSettings::canonical(), 0, ChshModel::hv_per_setting, 1), std::invalid_argument);
}

TEST_CASE("hv CHSH at canonical angles approaches -2 sqrt 2") {
  const auto r = run_chsh(ChshSettings::canonical(), 1'000'000, ChshModel::hv_per_setting, 9);
  CHECK(std::abs(r.s + 2 * std::sqrt(2.0)) < 5 * r.s_std_error);
  CHECK((std::abs(r.s) - 2.0) / r.s_std_error > 5.0);
}

TEST_CASE("hemisphere model correlation: enumeration oracle") {
  for (double t = 0.0; t <= pi; t += pi / 16) {
    CHECK(std::abs(oracle::hemisphere_correlation_enumerated(t, 1'000'000) - transfer_baseline_correlation(t)) < 1e-5);
  }
}

TEST_CASE("transfer baseline") {
  const std::uint64_t n = 1'000'000;
  const auto r = run_transfer_baseline(ChshSettings::canonical(), n, 10);
  CHECK(r.model == ChshModel::transfer_baseline);
  const std::array<double, 4> thetas{pi / 4, 3 * pi / 4, pi / 4, pi / 4};
  for (int i = 0; i < 4; ++i) {
    const double target = oracle::hemisphere_correlation_enumerated(thetas[i], 1'000'000);
    CHECK(std::abs(r.pairs[i].estimate.value - target) < 4 * r.pairs[i].estimate.std_error);
  }
  CHECK(std::abs(r.s + 2.0) < 5 * r.s_std_error);

  const auto same = run_transfer_baseline({plane(0.3), plane(0.3), plane(0.3), plane(0.3)}, 1000, 11);
  CHECK(same.pairs[0].estimate.value == -1.0);

  const auto mid = run_transfer_baseline({plane(0), plane(0), plane(pi / 2), plane(pi / 2)}, n, 12);
  CHECK(std::abs(mid.pairs[0].estimate.value) < 4 * std::sqrt(1.0 / n));

  // run_chsh dispatches the transfer model to the shared-trial baseline
  const auto via_chsh = run_chsh(ChshSettings::canonical(), 5000, ChshModel::transfer_baseline, 13);
  const auto direct = run_transfer_baseline(ChshSettings::canonical(), 5000, 13);
  CHECK(via_chsh.s == direct.s);
  CHECK_THROWS_AS(run_transfer_baseline(ChshSettings::canonical(), 0, 1), std::invalid_argument);
}

TEST_CASE("transfer baseline never exceeds the Bell bound") {
  std::mt19937_64 gen(14);
  for (int i = 0; i < 20; ++i) {
    const ChshSettings s{oracle::random_direction(gen), oracle::random_direction(gen),
                         oracle::random_direction(gen), oracle::random_direction(gen)};
    const auto r = run_transfer_baseline(s, 10000, 100 + i);
    CHECK(std::abs(r.s) <= 2.0 + 5 * r.s_std_error);
  }
}
