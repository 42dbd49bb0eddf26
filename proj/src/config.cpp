#include "aircast/config.hpp"

#include <charconv>
#include <fstream>

#include "aircast/error.hpp"

namespace aircast {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(Errc::config_invalid, key + ": '" + value + "' is not an integer");
  }
  return v;
}

double parse_num(const std::string& key, const std::string& value) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(Errc::config_invalid, key + ": '" + value + "' is not a number");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(Errc::config_invalid, key + ": '" + value + "' is not a boolean");
}

int parse_clock_or_die(const std::string& key, const std::string& value) {
  int minute = 0;
  if (!parse_clock(value, minute)) {
    throw Error(Errc::config_invalid, key + ": '" + value + "' is not a clock time");
  }
  return minute;
}

int weekday_index(const std::string& name) {
  static const char* names[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
  for (int i = 0; i < 7; ++i) {
    if (name == names[i]) return i;
  }
  throw Error(Errc::config_invalid, "unknown weekday '" + name + "'");
}

std::uint8_t parse_working_days(const std::string& value) {
  std::uint8_t mask = 0;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t pos = value.find(',', start);
    if (pos == std::string::npos) pos = value.size();
    const std::string item = trim(value.substr(start, pos - start));
    if (!item.empty()) {
      const std::size_t dash = item.find('-');
      if (dash != std::string::npos) {
        const int a = weekday_index(trim(item.substr(0, dash)));
        const int b = weekday_index(trim(item.substr(dash + 1)));
        if (a > b) {
          throw Error(Errc::config_invalid, "bad weekday range '" + item + "'");
        }
        for (int d = a; d <= b; ++d) mask |= std::uint8_t(1u << d);
      } else {
        mask |= std::uint8_t(1u << weekday_index(item));
      }
    }
    start = pos + 1;
  }
  if (mask == 0) {
    throw Error(Errc::config_invalid, "working_days '" + value + "' selects no days");
  }
  return mask;
}

std::vector<Format> parse_formats(const std::string& value) {
  std::vector<Format> formats;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t pos = value.find(',', start);
    if (pos == std::string::npos) pos = value.size();
    const std::string item = trim(value.substr(start, pos - start));
    if (!item.empty()) formats.push_back(parse_format(item));
    start = pos + 1;
  }
  if (formats.empty()) {
    throw Error(Errc::config_invalid, "report.formats selects nothing");
  }
  return formats;
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "data") config.data = value;
  else if (key == "out") config.out = value;
  else if (key == "schema.ts") config.schema.ts = value;
  else if (key == "schema.asat") config.schema.asat = value;
  else if (key == "schema.at") config.schema.ambient = value;
  else if (key == "schema.rt") config.schema.room_avg = value;
  else if (key == "calendar.day_start") config.cal.day_start = parse_clock_or_die(key, value);
  else if (key == "calendar.day_end") config.cal.day_end = parse_clock_or_die(key, value);
  else if (key == "calendar.resolution") config.cal.resolution = static_cast<int>(parse_int(key, value));
  else if (key == "calendar.working_days") config.cal.working_days = parse_working_days(value);
  else if (key == "ingest.max_fill") config.max_fill = static_cast<int>(parse_int(key, value));
  else if (key == "huber.delta") config.huber.delta = parse_num(key, value);
  else if (key == "huber.max_iter") config.huber.max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "huber.tol") config.huber.tol = parse_num(key, value);
  else if (key == "train.window_days") config.window_days = static_cast<int>(parse_int(key, value));
  else if (key == "train.pooled") config.pooled = parse_bool(key, value);
  else if (key == "attribution.method") config.method = value;
  else if (key == "attribution.n_permutations") config.n_permutations = static_cast<int>(parse_int(key, value));
  else if (key == "attribution.seed") config.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "attribution.max_features") config.max_features = static_cast<int>(parse_int(key, value));
  else if (key == "report.formats") config.formats = parse_formats(value);
  else if (key == "report.k") config.top_k = static_cast<int>(parse_int(key, value));
  else if (key == "threads") config.threads = static_cast<int>(parse_int(key, value));
  else if (key == "synth.days") config.synth_days = static_cast<int>(parse_int(key, value));
  else if (key == "synth.start") {
    if (!parse_date(value, config.synth_start)) {
      throw Error(Errc::config_invalid, key + ": '" + value + "' is not a date");
    }
  } else {
    throw Error(Errc::config_invalid, "unknown config key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open config '" + path + "'");
  }
  RunConfig config;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::config_invalid, path + ":" + std::to_string(line_no) +
                                            ": expected key = value");
    }
    apply_config_entry(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return config;
}

void RunConfig::validate() const {
  cal.validate();
  if (max_fill < 0) {
    throw Error(Errc::config_invalid, "ingest.max_fill must be >= 0");
  }
  if (huber.delta <= 0 || huber.max_iter < 1 || huber.tol <= 0) {
    throw Error(Errc::config_invalid, "bad huber options");
  }
  if (window_days != 0 && window_days < 3) {
    throw Error(Errc::config_invalid, "train.window_days must be 0 (all) or >= 3");
  }
  if (method != "linear" && method != "shapley_exact" && method != "shapley_mc") {
    throw Error(Errc::config_invalid,
                "attribution.method '" + method +
                    "' not in {linear, shapley_exact, shapley_mc}");
  }
  if (n_permutations < 2) {
    throw Error(Errc::config_invalid, "attribution.n_permutations must be >= 2");
  }
  if (max_features < 1 || max_features > 25) {
    throw Error(Errc::config_invalid, "attribution.max_features must be in [1, 25]");
  }
  const int n_features = cal.slots_per_day() + 2;
  if (top_k < 1 || top_k > n_features) {
    throw Error(Errc::config_invalid, "report.k must be in [1, " +
                                          std::to_string(n_features) + "]");
  }
  if (threads < 1) {
    throw Error(Errc::config_invalid, "threads must be >= 1");
  }
  if (synth_days < 1) {
    throw Error(Errc::config_invalid, "synth.days must be >= 1");
  }
}

}  // namespace aircast
