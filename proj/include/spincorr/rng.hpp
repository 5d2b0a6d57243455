#pragma once

// Counter-based random streams.
//
// Every uniform drawn by the samplers is a pure function of
// (seed, stream id, trial index, draw index), so results do not depend on
// how trials are distributed across threads or in which order series run.

#include <array>
#include <cstdint>

namespace spincorr {

/// Philox4x32-10 block function (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key);
};

/// 53-bit uniform in [0, 1) from the high bits of a 64-bit word.
double to_unit_double(std::uint64_t bits);

/// Sequential draws for one trial. Each Philox block yields two doubles;
/// the block counter advances as draws are consumed.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t trial);

  /// Uniform in [0, 1).
  double uniform();

  /// Fair +/-1 coin.
  int sign() { return uniform() < 0.5 ? +1 : -1; }

 private:
  void refill();

  Philox4x32::Key key_{};
  Philox4x32::Counter ctr_{};
  std::array<double, 2> buf_{};
  int next_ = 2;
};

/// Keyed family of per-trial streams: (seed, stream id).
class StreamFamily {
 public:
  StreamFamily(std::uint64_t seed, std::uint32_t stream) : seed_(seed), stream_(stream) {}

  TrialStream trial(std::uint64_t index) const { return {seed_, stream_, index}; }

  std::uint64_t seed() const { return seed_; }
  std::uint32_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
};

}  // namespace spincorr
