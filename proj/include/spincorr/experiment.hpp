#pragma once

// Coincidence series, the counting estimator of the correlation, and CHSH
// runs for the per-setting hidden-variable model and for a
// transferable-outcome baseline.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "spincorr/bloch_direction.hpp"
#include "spincorr/hidden_variable.hpp"
#include "spincorr/parallel.hpp"

namespace spincorr {

/// Channel tallies for one setting pair. Channels follow the joint
/// eigenbasis order: 1 = (+,-), 2 = (-,+), 3 = (+,+), 4 = (-,-).
struct SettingSeries {
  BlochDirection a;
  BlochDirection b;
  std::array<std::uint64_t, 4> counts{};

  std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

/// Channel (1..4) for outcome signs (alpha, beta).
int channel_of(int alpha, int beta);

/// How a single setting pair is sampled.
///  - hv: hidden-variable model, reduced to the separation angle.
///  - quantum_sampler: channel drawn from the exact Born weights C_k.
enum class SeriesModel { hv, quantum_sampler };

/// n fresh trials for the pair (a, b). Randomness is keyed by
/// (seed, stream, trial), never by global draw order.
/// Throws std::invalid_argument for n = 0.
SettingSeries run_series(const BlochDirection& a, const BlochDirection& b, std::uint64_t n,
                         SeriesModel model, std::uint64_t seed, std::uint32_t stream = 0,
                         Execution exec = {});

/// (-N1 - N2 + N3 + N4) / N with the binomial standard error.
/// Throws std::invalid_argument on an empty series.
CorrelationEstimate estimate_correlation(const SettingSeries& series);

enum class ChshModel { quantum_exact, hv_per_setting, quantum_sampler, transfer_baseline };

std::string_view to_string(ChshModel model);

struct ChshSettings {
  BlochDirection a;
  BlochDirection a_prime;
  BlochDirection b;
  BlochDirection b_prime;

  /// a = 0, a' = pi/2, b = pi/4, b' = 3pi/4, all in the x-z plane.
  static ChshSettings canonical();
};

struct PairResult {
  BlochDirection first;
  BlochDirection second;
  CorrelationEstimate estimate;
  std::optional<std::array<std::uint64_t, 4>> counts;  // absent for quantum_exact
};

/// Pairs are stored in the order (a,b), (a,b'), (a',b), (a',b').
struct ChshReport {
  ChshModel model = ChshModel::quantum_exact;
  ChshSettings settings;
  std::array<PairResult, 4> pairs{};
  double s = 0.0;
  double s_std_error = 0.0;  // per-pair errors in quadrature
};

/// E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp);

/// Pair slot i of a CHSH run uses stream id i.
inline constexpr std::array<std::uint32_t, 4> kChshPairStreams{0, 1, 2, 3};

/// Four independent series (one fresh stream per pair). Dispatches to
/// run_transfer_baseline for ChshModel::transfer_baseline.
/// Throws std::invalid_argument for n_per_pair = 0.
ChshReport run_chsh(const ChshSettings& settings, std::uint64_t n_per_pair, ChshModel model,
                    std::uint64_t seed, Execution exec = {});

/// Hemisphere-sign model: one hidden unit vector per trial, uniform on the
/// sphere, shared by all four pairs; alpha = sign(lambda.x) for side 1 and
/// beta = -sign(lambda.y) for side 2.
ChshReport run_transfer_baseline(const ChshSettings& settings, std::uint64_t n,
                                 std::uint64_t seed, Execution exec = {});

/// Expected correlation of the hemisphere-sign model: -1 + 2 theta / pi.
double transfer_baseline_correlation(double theta_ab);

}  // namespace spincorr
