#include "spincorr/rng.hpp"

namespace spincorr {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t{a} * std::uint64_t{b};
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double to_unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

TrialStream::TrialStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), stream, 0u} {}

void TrialStream::refill() {
  const auto out = Philox4x32::generate(ctr_, key_);
  ++ctr_[3];
  buf_[0] = to_unit_double((std::uint64_t{out[1]} << 32) | out[0]);
  buf_[1] = to_unit_double((std::uint64_t{out[3]} << 32) | out[2]);
  next_ = 0;
}

double TrialStream::uniform() {
  if (next_ == 2) refill();
  return buf_[next_++];
}

}  // namespace spincorr
