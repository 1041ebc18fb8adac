#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace foldkit {

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> quiver;
  std::optional<std::string> cartan;
  bool unfolded = false;
  std::optional<std::string> lambda;
  std::int64_t depth = 4;
  std::uint64_t seed = 1;
  std::string format = "tsv";
  std::optional<std::string> cache;
  bool crystal_check = false;
  std::int64_t trials = 200;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace foldkit
