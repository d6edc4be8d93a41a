#ifndef VPRISM_CONFIG_HPP
#define VPRISM_CONFIG_HPP

// Flat "key: value" run configuration. Units are part of the key name and
// are converted once, when the scene is built: *_hz -> rad/s, *_mm -> cm,
// *_nm -> cm. Unknown or repeated keys are errors.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vprism/experiment.hpp"

namespace vprism {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& what);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Every field is an override; unset fields fall back to default_scene()
/// and the built-in sweep defaults.
struct RunConfig {
  std::optional<double> wavelength_nm;
  std::optional<double> density_cm3;
  std::optional<double> gamma_hz;
  std::optional<double> gamma_r_hz;
  std::optional<double> gamma_cb_hz;
  std::optional<double> cell_length_mm;
  std::optional<double> control_rabi_hz;
  std::optional<double> control_waist_mm;
  std::optional<double> control_center_mm;
  std::optional<double> probe_waist_mm;
  std::optional<double> probe_offset_mm;
  std::optional<double> detector_distance_mm;
  std::optional<int> grid_points;
  std::optional<double> grid_spacing_mm;
  std::optional<int> slices;
  std::optional<int> ray_steps;

  std::optional<double> sweep_min_hz;
  std::optional<double> sweep_max_hz;
  std::optional<int> sweep_points;
  std::optional<double> reference_hz;
  std::optional<double> dispersion_step_hz;
  std::optional<std::vector<double>> profile_detunings_hz;
  std::optional<double> trace_detuning_hz;
  std::optional<std::string> command;
  std::optional<std::string> output;

  bool operator==(const RunConfig&) const = default;
};

/// Documented keys, in serialization order.
const std::vector<std::string_view>& config_keys();

/// Parses and validates; throws ConfigError on syntax, unknown keys, or
/// physical invariants.
RunConfig parse_config(std::string_view text);

/// Overrides only, one "key: value" per line; parse_config round-trips it.
std::string format_config(const RunConfig& cfg);

/// Full scene as a config document in key units.
std::string format_scene(const Scene& scene);

/// default_scene() with the overrides applied.
Scene to_scene(const RunConfig& cfg);

struct SweepBounds {
  Detuning min;
  Detuning max;
  int points;
};

/// Defaults: +/- 2 Omega0, 101 points.
SweepBounds sweep_bounds(const RunConfig& cfg, const Scene& scene);

}  // namespace vprism

#endif  // VPRISM_CONFIG_HPP
