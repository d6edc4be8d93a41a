#include "vprism/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <variant>

namespace vprism {

ConfigError::ConfigError(int line, std::string key, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") +
                                        ": " + what
                                  : "config: " + what),
      line_(line),
      key_(std::move(key)) {}

namespace {

using Field = std::variant<std::optional<double> RunConfig::*, std::optional<int> RunConfig::*,
                           std::optional<std::string> RunConfig::*,
                           std::optional<std::vector<double>> RunConfig::*>;

struct Key {
  std::string_view name;
  Field field;
};

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = {
      {"wavelength_nm", &RunConfig::wavelength_nm},
      {"density_cm3", &RunConfig::density_cm3},
      {"gamma_hz", &RunConfig::gamma_hz},
      {"gamma_r_hz", &RunConfig::gamma_r_hz},
      {"gamma_cb_hz", &RunConfig::gamma_cb_hz},
      {"cell_length_mm", &RunConfig::cell_length_mm},
      {"control_rabi_hz", &RunConfig::control_rabi_hz},
      {"control_waist_mm", &RunConfig::control_waist_mm},
      {"control_center_mm", &RunConfig::control_center_mm},
      {"probe_waist_mm", &RunConfig::probe_waist_mm},
      {"probe_offset_mm", &RunConfig::probe_offset_mm},
      {"detector_distance_mm", &RunConfig::detector_distance_mm},
      {"grid_points", &RunConfig::grid_points},
      {"grid_spacing_mm", &RunConfig::grid_spacing_mm},
      {"slices", &RunConfig::slices},
      {"ray_steps", &RunConfig::ray_steps},
      {"sweep_min_hz", &RunConfig::sweep_min_hz},
      {"sweep_max_hz", &RunConfig::sweep_max_hz},
      {"sweep_points", &RunConfig::sweep_points},
      {"reference_hz", &RunConfig::reference_hz},
      {"dispersion_step_hz", &RunConfig::dispersion_step_hz},
      {"profile_detunings_hz", &RunConfig::profile_detunings_hz},
      {"trace_detuning_hz", &RunConfig::trace_detuning_hz},
      {"command", &RunConfig::command},
      {"output", &RunConfig::output},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, int line, std::string_view key) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(line, std::string(key), "expected a finite number, got '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, int line, std::string_view key) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(line, std::string(key), "expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view s, int line, std::string_view key) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = trim(s.substr(1, s.size() - 2));
  std::vector<double> out;
  if (s.empty()) throw ConfigError(line, std::string(key), "expected a comma-separated list of numbers");
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(s.substr(0, comma), line, key));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

void require_positive(const std::optional<double>& v, std::string_view key) {
  if (v && !(*v > 0)) throw ConfigError(0, std::string(key), std::string(key) + " must be positive");
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> n;
    for (const Key& k : key_table()) n.push_back(k.name);
    return n;
  }();
  return names;
}

Scene to_scene(const RunConfig& cfg) {
  Scene s = default_scene();
  if (cfg.wavelength_nm) s.medium.lambda_ab = nm_to_cm(*cfg.wavelength_nm);
  if (cfg.density_cm3) s.medium.density = *cfg.density_cm3;
  if (cfg.gamma_hz) s.medium.gamma = hz_to_rad_per_s(*cfg.gamma_hz);
  if (cfg.gamma_r_hz) s.medium.gamma_r = hz_to_rad_per_s(*cfg.gamma_r_hz);
  if (cfg.gamma_cb_hz) s.medium.gamma_cb = hz_to_rad_per_s(*cfg.gamma_cb_hz);
  if (cfg.cell_length_mm) s.medium.cell_length = mm_to_cm(*cfg.cell_length_mm);
  if (cfg.control_rabi_hz) s.control.omega_peak = hz_to_rad_per_s(*cfg.control_rabi_hz);
  if (cfg.control_waist_mm) s.control.waist = mm_to_cm(*cfg.control_waist_mm);
  if (cfg.control_center_mm) s.control.center = mm_to_cm(*cfg.control_center_mm);
  if (cfg.probe_waist_mm) s.probe.waist = mm_to_cm(*cfg.probe_waist_mm);
  if (cfg.probe_offset_mm) s.probe.offset = mm_to_cm(*cfg.probe_offset_mm);
  if (cfg.detector_distance_mm) s.detector_distance = mm_to_cm(*cfg.detector_distance_mm);
  if (cfg.grid_points || cfg.grid_spacing_mm)
    s.grid = Grid1D::centered(cfg.grid_points.value_or(s.grid.n_points),
                              cfg.grid_spacing_mm ? mm_to_cm(*cfg.grid_spacing_mm) : s.grid.dx);
  if (cfg.slices) s.n_slices = *cfg.slices;
  if (cfg.ray_steps) s.ray_steps = *cfg.ray_steps;
  return s;
}

SweepBounds sweep_bounds(const RunConfig& cfg, const Scene& scene) {
  SweepBounds b;
  const double span = 2.0 * scene.control.omega_peak;
  b.min = cfg.sweep_min_hz ? Detuning::from_hz(*cfg.sweep_min_hz) : Detuning(-span);
  b.max = cfg.sweep_max_hz ? Detuning::from_hz(*cfg.sweep_max_hz) : Detuning(span);
  b.points = cfg.sweep_points.value_or(101);
  return b;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before ':'");

    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
    if (it == table.end()) throw ConfigError(line_no, std::string(key), "unknown key");
    if (!seen.insert(std::string(key)).second) throw ConfigError(line_no, std::string(key), "duplicate key");
    if (value.empty()) throw ConfigError(line_no, std::string(key), "missing value");

    std::visit(
        [&](auto member) {
          using T = typename std::remove_reference_t<decltype(cfg.*member)>::value_type;
          if constexpr (std::is_same_v<T, double>) cfg.*member = parse_double(value, line_no, key);
          else if constexpr (std::is_same_v<T, int>) cfg.*member = parse_int(value, line_no, key);
          else if constexpr (std::is_same_v<T, std::string>) cfg.*member = std::string(value);
          else cfg.*member = parse_list(value, line_no, key);
        },
        it->field);
  }

  require_positive(cfg.wavelength_nm, "wavelength_nm");
  require_positive(cfg.cell_length_mm, "cell_length_mm");
  require_positive(cfg.grid_spacing_mm, "grid_spacing_mm");
  if (cfg.command && *cfg.command != "chi" && *cfg.command != "sweep" && *cfg.command != "profile" &&
      *cfg.command != "trace")
    throw ConfigError(0, "command", "command must be one of chi, sweep, profile, trace");

  Scene scene;
  try {
    scene = to_scene(cfg);
    scene.validate();
  } catch (const std::exception& e) {
    throw ConfigError(0, "", e.what());
  }
  const SweepBounds b = sweep_bounds(cfg, scene);
  if (b.points < 3) throw ConfigError(0, "sweep_points", "sweep_points must be at least 3");
  if (!(b.min.value < b.max.value)) throw ConfigError(0, "sweep_min_hz", "sweep_min_hz must be below sweep_max_hz");
  require_positive(cfg.dispersion_step_hz, "dispersion_step_hz");
  return cfg;
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const Key& k : key_table()) {
    std::visit(
        [&](auto member) {
          const auto& v = cfg.*member;
          if (!v) return;
          using T = typename std::remove_reference_t<decltype(v)>::value_type;
          out += k.name;
          out += ": ";
          if constexpr (std::is_same_v<T, double>) out += format_double(*v);
          else if constexpr (std::is_same_v<T, int>) out += std::to_string(*v);
          else if constexpr (std::is_same_v<T, std::string>) out += *v;
          else {
            for (std::size_t i = 0; i < v->size(); ++i) {
              if (i) out += ", ";
              out += format_double((*v)[i]);
            }
          }
          out += '\n';
        },
        k.field);
  }
  return out;
}

std::string format_scene(const Scene& s) {
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  put("wavelength_nm", format_double(cm_to_nm(s.medium.lambda_ab)));
  put("density_cm3", format_double(s.medium.density));
  put("gamma_hz", format_double(rad_per_s_to_hz(s.medium.gamma)));
  put("gamma_r_hz", format_double(rad_per_s_to_hz(s.medium.gamma_r)));
  put("gamma_cb_hz", format_double(rad_per_s_to_hz(s.medium.gamma_cb)));
  put("cell_length_mm", format_double(cm_to_mm(s.medium.cell_length)));
  put("control_rabi_hz", format_double(rad_per_s_to_hz(s.control.omega_peak)));
  put("control_waist_mm", format_double(cm_to_mm(s.control.waist)));
  put("control_center_mm", format_double(cm_to_mm(s.control.center)));
  put("probe_waist_mm", format_double(cm_to_mm(s.probe.waist)));
  put("probe_offset_mm", format_double(cm_to_mm(s.probe.offset)));
  put("detector_distance_mm", format_double(cm_to_mm(s.detector_distance)));
  put("grid_points", std::to_string(s.grid.n_points));
  put("grid_spacing_mm", format_double(cm_to_mm(s.grid.dx)));
  put("slices", std::to_string(s.n_slices));
  put("ray_steps", std::to_string(s.ray_steps));
  return out;
}

}  // namespace vprism
