#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace experiment {

/// Settings of one run. Optional fields fall back to per-system defaults
/// when the run starts (see resolve()).
struct ExperimentConfig {
  std::string system = "shift";  // shift, shift:<m> or toral
  std::optional<std::string> epsilon;
  std::optional<std::int64_t> jumps;
  std::optional<std::string> jump_scale;
  std::optional<std::int64_t> trials;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> window_margin;
  std::filesystem::path output_dir = "out";
  bool emit_error_table = false;
  std::optional<std::string> delta;  // falsify only: replaces the certified delta
};

enum class Command { Shadow, Falsify, Constants, Gen };

/// Defaults filled in for the chosen system and command.
struct Resolved {
  bool toral = false;
  int alphabet = 2;
  std::string epsilon;
  std::int64_t jumps = 0;
  std::int64_t trials = 0;
};

Resolved resolve(const ExperimentConfig& cfg, Command cmd);

/// key=value lines; '#' starts a comment. Unknown keys are an error.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& file);

/// Applies key=value settings on top of cfg.
void apply_key_values(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace experiment
