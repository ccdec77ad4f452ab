#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flock/config.hpp"

namespace flock {

inline constexpr std::string_view kVersion = "flocksim 0.1.0";

// Command-line values that take precedence over config-file values.
struct ConfigOverrides {
  std::optional<std::string> model;
  std::optional<int> n;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<double> k;
  std::optional<std::uint64_t> seed;
  std::optional<int> metrics_stride;
  std::optional<int> trace_stride;
  std::optional<std::string> snapshot_times;  // comma-separated list
};

// Parses flat key=value text ('#' starts a comment), applies overrides, fills
// unset keys with defaults, and validates. snapshot_times left unset by both
// sources defaults to the quarter points of the final t_end. Unknown keys are
// an error, except the informational keys a manifest carries ("version" and
// "artifact.*"), which are skipped so a manifest can be replayed as a config.
SimConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

// parse_config over the contents of a file. Throws IoError if unreadable.
SimConfig load_config(const std::filesystem::path& file,
                      const ConfigOverrides& overrides = {});

// Comma-separated reals ("0,25,50"). Throws ConfigError naming `key`.
std::vector<double> parse_time_list(std::string_view text, std::string_view key);

// Seed list: either "a..b" (inclusive range) or a comma-separated list.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

// Serializes the resolved config as key=value lines that parse_config accepts.
std::string config_to_text(const SimConfig& config);

// Run manifest: resolved config plus version and artifact paths, written as a
// replayable config file. Contains everything needed to reproduce the run bit
// for bit; deliberately nothing that varies between identical runs.
void write_manifest(const std::filesystem::path& path, const SimConfig& config,
                    const std::vector<std::pair<std::string, std::string>>& artifacts);

}  // namespace flock
