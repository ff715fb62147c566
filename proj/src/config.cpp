#include "bfamily/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "bfamily/errors.hpp"
#include "bfamily/presets.hpp"
#include "json_io.hpp"

namespace bfamily {

namespace {

const std::pair<Command, std::string_view> kCommands[] = {
    {Command::SolveLagrangian, "solve-lagrangian"},
    {Command::SolveEuler, "solve-euler"},
    {Command::Compare, "compare"},
    {Command::Probe, "probe"},
    {Command::ScaleCheck, "scale-check"},
    {Command::Transversality, "transversality"},
    {Command::Convergence, "convergence"},
};

[[noreturn]] void bad(const std::string& key, const std::string& what, const std::string& got) {
  throw Error(ErrorCategory::Config, "invalid value for '" + key + "': " + what + " (got '" + got + "')");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) bad(key, "expected a number", v);
  return x;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) bad(key, "expected an integer", v);
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad(key, "expected true or false", v);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

void apply(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "command") {
    const auto it = std::find_if(std::begin(kCommands), std::end(kCommands), [&](auto& p) { return p.second == v; });
    if (it == std::end(kCommands)) bad(key, "unknown command", v);
    c.command = it->first;
  } else if (key == "length") {
    c.length = parse_double(key, v);
    if (!(c.length > 0.0)) bad(key, "must be positive", v);
  } else if (key == "n_points") {
    const long long n = parse_int(key, v);
    if (n < 8 || n % 2 != 0 || n > (1 << 22)) bad(key, "must be even and in [8, 4194304]", v);
    c.n_points = static_cast<std::size_t>(n);
  } else if (key == "s") {
    c.s = parse_double(key, v);
    if (!(c.s > 1.5)) bad(key, "must exceed 3/2", v);
  } else if (key == "b") {
    c.b = parse_double(key, v);
  } else if (key == "dt") {
    c.dt = parse_double(key, v);
    if (!(c.dt > 0.0)) bad(key, "must be positive", v);
  } else if (key == "t_final") {
    c.t_final = parse_double(key, v);
    if (!(c.t_final > 0.0)) bad(key, "must be positive", v);
  } else if (key == "stride") {
    const long long n = parse_int(key, v);
    if (n < 0) bad(key, "must be non-negative", v);
    c.stride = static_cast<std::size_t>(n);
  } else if (key == "validity_margin") {
    c.validity_margin = parse_double(key, v);
    if (!(c.validity_margin >= 0.0 && c.validity_margin < 1.0)) bad(key, "must lie in [0, 1)", v);
  } else if (key == "preset") {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), v) == names.end()) bad(key, "unknown preset", v);
    c.preset = v;
  } else if (key == "u0_file" || key == "rho0_file") {
    if (!v.empty() && !std::filesystem::is_regular_file(v)) bad(key, "field file not found", v);
    (key == "u0_file" ? c.u0_file : c.rho0_file) = v;
  } else if (key == "output_dir") {
    if (v.empty()) bad(key, "must not be empty", v);
    c.output_dir = v;
  } else if (key == "seed") {
    const long long n = parse_int(key, v);
    if (n < 0) bad(key, "must be non-negative", v);
    c.seed = static_cast<std::uint64_t>(n);
  } else if (key == "euler_filter") {
    c.euler_filter = parse_bool(key, v);
  } else if (key == "n_list") {
    std::vector<int> ns;
    for (const std::string& item : split_list(v)) {
      const long long n = parse_int(key, item);
      if (n <= 0 || n > 1'000'000 || (!ns.empty() && n <= ns.back())) {
        bad(key, "must be positive and strictly increasing", v);
      }
      ns.push_back(static_cast<int>(n));
    }
    if (ns.empty()) bad(key, "must not be empty", v);
    c.n_list = std::move(ns);
  } else if (key == "radius") {
    c.radius = parse_double(key, v);
    if (!(c.radius > 0.0)) bad(key, "must be positive", v);
  } else if (key == "a_star") {
    c.a_star = parse_double(key, v);
  } else if (key == "workers") {
    const long long n = parse_int(key, v);
    if (n < 1 || n > 256) bad(key, "must lie in [1, 256]", v);
    c.workers = static_cast<unsigned>(n);
  } else if (key == "t_grid") {
    std::vector<double> ts;
    for (const std::string& item : split_list(v)) {
      const double t = parse_double(key, item);
      if (!(t >= 0.0 && t <= 1.0)) bad(key, "entries must lie in [0, 1]", v);
      ts.push_back(t);
    }
    if (ts.empty()) bad(key, "must not be empty", v);
    c.t_grid = std::move(ts);
  } else if (key == "T_list") {
    std::vector<double> ts;
    for (const std::string& item : split_list(v)) {
      const double t = parse_double(key, item);
      if (!(t > 0.0)) bad(key, "entries must be positive", v);
      ts.push_back(t);
    }
    if (ts.empty()) bad(key, "must not be empty", v);
    c.T_list = std::move(ts);
  } else if (key == "levels") {
    const long long n = parse_int(key, v);
    if (n < 1 || n > 4) bad(key, "must lie in [1, 4]", v);
    c.levels = static_cast<int>(n);
  } else {
    throw Error(ErrorCategory::Config, "unknown configuration key '" + key + "'");
  }
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "command", "length",  "n_points",   "s",         "b",      "dt",     "t_final", "stride",
      "validity_margin", "preset", "u0_file", "rho0_file", "output_dir", "seed", "euler_filter", "n_list",
      "radius",  "a_star",  "workers",    "t_grid",    "T_list", "levels"};
  return keys;
}

KeyValues parse_config_text(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCategory::Config, "line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCategory::Config, "unknown configuration key '" + key + "'");
    }
    if (!out.emplace(key, value).second) {
      throw Error(ErrorCategory::Config, "configuration key '" + key + "' given twice");
    }
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCategory::Config, "config file '" + path.string() + "' not found");
  }
  const std::string text = detail::read_text(path);
  if (path.extension() != ".json") return parse_config_text(text);
  KeyValues out;
  try {
    const auto j = detail::ordered_json::parse(text);
    for (const auto& [key, value] : j.at("config").items()) {
      if (value.is_string()) {
        out[key] = value.get<std::string>();
      } else if (value.is_array()) {
        std::vector<std::string> items;
        for (const auto& v : value) items.push_back(v.dump());
        out[key] = join(items);
      } else {
        out[key] = value.dump();
      }
    }
  } catch (const detail::ordered_json::exception& e) {
    throw Error(ErrorCategory::Config, "manifest '" + path.string() + "': " + e.what());
  }
  return out;
}

RunConfig parse_config(const KeyValues& file, const KeyValues& flags) {
  KeyValues merged = file;
  for (const auto& [k, v] : flags) merged[k] = v;
  RunConfig c;
  if (const auto it = merged.find("command"); it != merged.end()) apply(c, "command", it->second);
  if (c.command == Command::Probe) {
    c.n_points = 4096;
    c.dt = 2.5e-4;
  }
  for (const auto& [k, v] : merged) {
    if (k != "command") apply(c, k, v);
  }
  if (c.dt > c.t_final) {
    bad("dt", "must not exceed t_final", std::to_string(c.dt));
  }
  if (!(c.a_star >= 0.0 && c.a_star < c.length)) bad("a_star", "must lie in [0, length)", std::to_string(c.a_star));
  return c;
}

KeyValues to_key_values(const RunConfig& c) {
  auto num = [](double x) { return detail::ordered_json(x).dump(); };
  std::vector<std::string> ns, ts, Ts;
  for (int n : c.n_list) ns.push_back(std::to_string(n));
  for (double t : c.t_grid) ts.push_back(num(t));
  for (double t : c.T_list) Ts.push_back(num(t));
  return {
      {"command", std::string(to_string(c.command))},
      {"length", num(c.length)},
      {"n_points", std::to_string(c.n_points)},
      {"s", num(c.s)},
      {"b", num(c.b)},
      {"dt", num(c.dt)},
      {"t_final", num(c.t_final)},
      {"stride", std::to_string(c.stride)},
      {"validity_margin", num(c.validity_margin)},
      {"preset", c.preset},
      {"u0_file", c.u0_file},
      {"rho0_file", c.rho0_file},
      {"output_dir", c.output_dir},
      {"seed", std::to_string(c.seed)},
      {"euler_filter", c.euler_filter ? "true" : "false"},
      {"n_list", join(ns)},
      {"radius", num(c.radius)},
      {"a_star", num(c.a_star)},
      {"workers", std::to_string(c.workers)},
      {"t_grid", join(ts)},
      {"T_list", join(Ts)},
      {"levels", std::to_string(c.levels)},
  };
}

}  // namespace bfamily
