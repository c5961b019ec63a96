#ifndef MAGDTN_TOOLS_CLI_HPP
#define MAGDTN_TOOLS_CLI_HPP

// Command layer shared by the magdtn executable and its tests. Every
// subcommand is expressed as a JSON run configuration (schema 1), validated
// before anything is computed, then dispatched.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace magdtn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Configuration rejected before computation; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::uint64_t seed = 1;
};

/// Throws ConfigError on unknown keys, missing keys or bad values.
void validate(const nlohmann::json& config);

/// Validates and runs one configuration. The primary output goes to
/// config.output.path when given, otherwise to `out`; diagnostics go to
/// `err` as JSON. Returns the process exit code.
int run(const nlohmann::json& config, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Constants document with its reference checks; `failed` is set when any
/// check misses its tolerance.
nlohmann::json constants_report(bool& failed);

/// Shortest round-trip decimal form of a double.
std::string format_number(double x);

}  // namespace magdtn::cli

#endif  // MAGDTN_TOOLS_CLI_HPP
