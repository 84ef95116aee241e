#include "config.hpp"

#include <fstream>

namespace experiment {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' needs a boolean, got '" + v + "'");
}

}  // namespace

Resolved resolve(const ExperimentConfig& cfg, Command cmd) {
  Resolved r;
  if (cfg.system == "toral") {
    r.toral = true;
  } else if (cfg.system == "shift") {
    r.alphabet = 2;
  } else if (cfg.system.rfind("shift:", 0) == 0) {
    r.alphabet = static_cast<int>(to_int("system", cfg.system.substr(6)));
    if (r.alphabet < 2 || r.alphabet > 16) throw ConfigError("shift alphabet size must lie in 2..16");
  } else {
    throw ConfigError("unknown system '" + cfg.system + "' (expected shift, shift:<m> or toral)");
  }
  r.epsilon = cfg.epsilon.value_or(r.toral ? "1/64" : "2^-6");
  r.jumps = cfg.jumps.value_or(r.toral ? 4 : 8);
  if (r.jumps < 0) throw ConfigError("jumps must be nonnegative");
  std::int64_t default_trials = r.toral ? 200 : 500;
  if (cmd == Command::Falsify) default_trials = 10000;
  r.trials = cfg.trials.value_or(default_trials);
  if (r.trials < 0) throw ConfigError("trials must be nonnegative");
  if (cfg.window_margin && *cfg.window_margin < 0) throw ConfigError("window margin must be nonnegative");
  return r;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_key_values(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "system") cfg.system = value;
    else if (key == "epsilon") cfg.epsilon = value;
    else if (key == "jumps") cfg.jumps = to_int(key, value);
    else if (key == "jump_scale") cfg.jump_scale = value;
    else if (key == "trials") cfg.trials = to_int(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "window_margin") cfg.window_margin = to_int(key, value);
    else if (key == "out" || key == "output_dir") cfg.output_dir = value;
    else if (key == "emit_error_table") cfg.emit_error_table = to_bool(key, value);
    else if (key == "delta") cfg.delta = value;
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace experiment
