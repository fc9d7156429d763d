#pragma once

#include <amplitude_lab/errors.hpp>
#include <amplitude_lab/linalg.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace amplitude_lab::cli {

/// Settings shared by every subcommand.
struct RunConfig {
  Tolerances tol;
  std::uint64_t seed = 0;
  bool csv = false;
  /// Largest block size accepted from inputs and used by selftest.
  std::optional<Index> max_dim;
  unsigned threads = 1;
};

/// Exit status for a library error. 0 is success, 1 a usage error, 2 an
/// unexpected failure and 3 a failed self-test; library codes start at 10.
int exit_code(ErrorCode code) noexcept;

inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 2;
inline constexpr int kExitCheckFailed = 3;

/// Worker count: hardware concurrency, capped by AMPLITUDE_LAB_THREADS.
unsigned thread_budget();

/// %.9g, with negative zero printed as 0.
std::string format_number(double value);

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs the invariant suite and prints one CSV row per check. Returns the
/// process exit status.
int selftest(const RunConfig& config, std::ostream& out);

}  // namespace amplitude_lab::cli
