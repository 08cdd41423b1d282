#pragma once

// The command-line runner. Every verdict comes from a library call; this
// layer only validates configs, picks defaults and formats reports.
//
// Exit codes: 0 PASS, 1 FAIL, 2 configuration or usage error, 3 I/O error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gltkit/error.hpp"

namespace gltkit::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Command-line values that replace config fields.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::vector<std::size_t>> schedule;
};

struct RunResult {
  std::string kind;
  bool pass = false;
  std::string csv;         // deterministic given the config
  nlohmann::json summary;  // inputs echoed, deviations, verdict, wall time
};

/// The config with overrides applied, validated, defaults filled in.
/// Throws ConfigError.
nlohmann::json normalize_config(nlohmann::json config, const Overrides& overrides);

/// Runs a normalised or raw config without touching the file system.
RunResult run_experiment(const nlohmann::json& config, const Overrides& overrides = {});

/// Column documentation for the CSV of a kind.
std::string gnuplot_hints(const std::string& kind);

/// Parses "a,b,c" into positive integers; throws ConfigError.
std::vector<std::size_t> parse_size_list(const std::string& text);

/// Full command line: `gltkit <verify|spectrum|fem|perm|matrix> ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gltkit::cli
