#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace psqm::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Thrown for anything the user got wrong; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> protocol;
  std::optional<int> k;
  std::optional<int> l;
  std::optional<int> n;
  std::optional<std::string> inputs;
  std::optional<std::string> table;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::uint64_t budget = std::uint64_t{1} << 16;
  std::optional<std::string> out;
  bool exhaustive = false;
  bool timing = false;

  /// Echo of the options that shape the result (the output path is left out).
  Json echo() const;
};

Report cmd_run(const RunConfig& config);
Report cmd_verify(const RunConfig& config);
Report cmd_bound(const RunConfig& config);
Report cmd_stats(const RunConfig& config);

/// Full command line handling: parses args (args[0] is the program name), runs the
/// subcommand, writes the report to --out or `out`, and returns the exit code.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psqm::cli
