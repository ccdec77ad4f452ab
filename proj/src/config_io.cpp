#include "flock/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flock/csv_io.hpp"
#include "flock/errors.hpp"

namespace flock {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            const char* expected) {
  throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                    std::string(value) + "' as " + expected);
}

double parse_real(std::string_view key, const std::string& value) {
  if (value.empty()) bad_value(key, value, "a real number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || errno == ERANGE) {
    bad_value(key, value, "a real number");
  }
  return v;
}

long long parse_int(std::string_view key, const std::string& value) {
  if (value.empty()) bad_value(key, value, "an integer");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || errno == ERANGE) {
    bad_value(key, value, "an integer");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view key, const std::string& value) {
  if (value.empty() || value[0] == '-') bad_value(key, value, "an unsigned integer");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || errno == ERANGE) {
    bad_value(key, value, "an unsigned integer");
  }
  return v;
}

ModelKind parse_model(const std::string& value) {
  if (auto kind = model_from_string(value)) return *kind;
  throw ConfigError("config key 'model': unknown model '" + value +
                    "' (expected pos_vel, position, or position_no_threshold)");
}

// Keys a manifest adds on top of the config; skipped on parse so manifests
// replay as configs.
bool is_informational(std::string_view key) {
  return key == "version" || key.substr(0, 9) == "artifact.";
}

struct ParsedFile {
  SimConfig config;
  bool snapshots_set = false;
  bool t_end_set = false;
};

void apply_line(ParsedFile& parsed, std::string_view key, const std::string& value) {
  SimConfig& cfg = parsed.config;
  if (key == "model") {
    cfg.model = parse_model(value);
  } else if (key == "n") {
    cfg.n = static_cast<int>(parse_int(key, value));
  } else if (key == "m") {
    cfg.m = static_cast<int>(parse_int(key, value));
  } else if (key == "r") {
    cfg.r = parse_real(key, value);
  } else if (key == "v_max") {
    cfg.v_max = parse_real(key, value);
  } else if (key == "t_vmax") {
    cfg.t_vmax = parse_real(key, value);
  } else if (key == "k") {
    cfg.k = parse_real(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_real(key, value);
  } else if (key == "t_end") {
    cfg.t_end = parse_real(key, value);
    parsed.t_end_set = true;
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "init_box") {
    cfg.init_box = parse_real(key, value);
  } else if (key == "v0_max") {
    cfg.v0_max = parse_real(key, value);
  } else if (key == "snapshot_times") {
    cfg.snapshot_times = parse_time_list(value, key);
    parsed.snapshots_set = true;
  } else if (key == "metrics_stride") {
    cfg.metrics_stride = static_cast<int>(parse_int(key, value));
  } else if (key == "trace_stride") {
    cfg.trace_stride = static_cast<int>(parse_int(key, value));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

}  // namespace

std::vector<double> parse_time_list(std::string_view text, std::string_view key) {
  std::vector<double> times;
  const std::string trimmed = trim(text);
  if (trimmed.empty()) return times;
  std::stringstream ss(trimmed);
  std::string item;
  while (std::getline(ss, item, ',')) {
    times.push_back(parse_real(key, trim(item)));
  }
  return times;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  const std::string trimmed = trim(text);
  if (trimmed.empty()) throw ConfigError("seed list is empty");
  const std::size_t range_pos = trimmed.find("..");
  std::vector<std::uint64_t> seeds;
  if (range_pos != std::string::npos) {
    const std::uint64_t lo = parse_u64("seeds", trim(trimmed.substr(0, range_pos)));
    const std::uint64_t hi = parse_u64("seeds", trim(trimmed.substr(range_pos + 2)));
    if (hi < lo) throw ConfigError("seed range is empty: " + trimmed);
    if (hi - lo > 100000) throw ConfigError("seed range too large: " + trimmed);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(trimmed);
  std::string item;
  while (std::getline(ss, item, ',')) {
    seeds.push_back(parse_u64("seeds", trim(item)));
  }
  if (seeds.empty()) throw ConfigError("seed list is empty");
  return seeds;
}

SimConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  ParsedFile parsed;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (is_informational(key)) continue;
    apply_line(parsed, key, value);
  }

  SimConfig& cfg = parsed.config;
  if (overrides.model) cfg.model = parse_model(*overrides.model);
  if (overrides.n) cfg.n = *overrides.n;
  if (overrides.dt) cfg.dt = *overrides.dt;
  if (overrides.t_end) {
    cfg.t_end = *overrides.t_end;
    parsed.t_end_set = true;
  }
  if (overrides.k) cfg.k = *overrides.k;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.metrics_stride) cfg.metrics_stride = *overrides.metrics_stride;
  if (overrides.trace_stride) cfg.trace_stride = *overrides.trace_stride;
  if (overrides.snapshot_times) {
    cfg.snapshot_times = parse_time_list(*overrides.snapshot_times, "snapshots");
    parsed.snapshots_set = true;
  }
  if (!parsed.snapshots_set) {
    cfg.snapshot_times = default_snapshot_times(cfg.t_end);
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& file,
                      const ConfigOverrides& overrides) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + file.string());
  return parse_config(buffer.str(), overrides);
}

std::string config_to_text(const SimConfig& config) {
  std::string text;
  text += "model=" + std::string(to_string(config.model)) + "\n";
  text += "n=" + std::to_string(config.n) + "\n";
  text += "m=" + std::to_string(config.m) + "\n";
  text += "r=" + format_real(config.r) + "\n";
  text += "v_max=" + format_real(config.v_max) + "\n";
  text += "t_vmax=" + format_real(config.t_vmax) + "\n";
  text += "k=" + format_real(config.k) + "\n";
  text += "dt=" + format_real(config.dt) + "\n";
  text += "t_end=" + format_real(config.t_end) + "\n";
  text += "seed=" + std::to_string(config.seed) + "\n";
  text += "init_box=" + format_real(config.init_box) + "\n";
  text += "v0_max=" + format_real(config.v0_max) + "\n";
  std::string times;
  for (double t : config.snapshot_times) {
    if (!times.empty()) times += ',';
    times += format_real(t);
  }
  text += "snapshot_times=" + times + "\n";
  text += "metrics_stride=" + std::to_string(config.metrics_stride) + "\n";
  text += "trace_stride=" + std::to_string(config.trace_stride) + "\n";
  return text;
}

void write_manifest(const std::filesystem::path& path, const SimConfig& config,
                    const std::vector<std::pair<std::string, std::string>>& artifacts) {
  std::string body = "version=" + std::string(kVersion) + "\n";
  body += config_to_text(config);
  for (const auto& [name, value] : artifacts) {
    body += "artifact." + name + "=" + value + "\n";
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << body;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace flock
