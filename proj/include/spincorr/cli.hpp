#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spincorr::cli {

inline constexpr const char* kToolName = "spincorr";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20211015;
inline constexpr std::uint64_t kDefaultTrials = 1'000'000;

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kIoError = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed command line, before angle conversion.
struct RunConfig {
  std::string command;  // exact | weights | sample | chsh | sweep
  std::optional<double> theta_ab;
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::optional<std::string> r;
  std::optional<std::string> a_prime;
  std::optional<std::string> b_prime;
  bool degrees = false;
  std::uint64_t n = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  std::string model;  // exact | hv | sampler | transfer; empty selects the command default
  std::string system = "singlet";  // sweep only: singlet | single-electron
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::string format = "csv";
  unsigned workers = 0;
};

/// Parses args (without the program name). Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed config, writing the report to config.out or to out.
/// Throws UsageError or IoError.
void execute(const RunConfig& config, std::ostream& out);

/// Full front end: parse, execute, map failures to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spincorr::cli
