#ifndef VPRISM_EXPERIMENT_HPP
#define VPRISM_EXPERIMENT_HPP

#include <vector>

#include "vprism/flags.hpp"
#include "vprism/ray_tracer.hpp"
#include "vprism/susceptibility.hpp"
#include "vprism/wave_propagator.hpp"

namespace vprism {

/// Probe and control beams through a vapor cell, imaged on a detector plane.
struct Scene {
  MediumParams medium;
  ControlField control;
  ProbeSpec probe;
  double detector_distance = 0;  // from the cell exit, cm
  Grid1D grid;
  int n_slices = 200;
  int ray_steps = 10000;

  void validate() const;
  bool operator==(const Scene&) const = default;
};

/// Heated Rb cell: 7.5 cm, 3e11 cm^-3, D1 line, detector at 2.3 m.
Scene default_scene();

/// Same scene with the probe reflected about the control axis.
Scene mirrored(const Scene& s);

struct SweepRow {
  double detuning = 0;      // rad/s
  double theta_ray = 0;     // rad
  double theta_wave = 0;    // rad
  double transmission = 0;  // at the cell exit
  double far_centroid = 0;  // cm
  double far_width = 0;     // cm
  Flag flags = Flag::none;
};

/// Fields at the three planes of one wave run.
struct WaveRun {
  TransverseField input;
  TransverseField exit;
  TransverseField detector;
};

WaveRun propagate_scene(const Scene& scene, Detuning d);

SweepRow run_point(const Scene& scene, Detuning d);

/// Uniformly spaced rows over [d_min, d_max]. threads <= 0 uses the hardware
/// concurrency; the output is identical for every thread count.
std::vector<SweepRow> detuning_sweep(const Scene& scene, Detuning d_min, Detuning d_max, int n_points,
                                     int threads = 0);

/// Ray exit angles only, for dense zero-structure scans.
std::vector<double> ray_angle_sweep(const Scene& scene, Detuning d_min, Detuning d_max, int n_points);

inline constexpr double default_dispersion_step = two_pi * 100.0;  // rad/s
/// Wave angles below this are treated as numerical zero, rad.
inline constexpr double angle_noise_floor = 1e-12;

struct DispersionResult {
  double per_nm = 0;  // signed d(theta)/d(lambda), rad/nm
  double per_rad_per_s = 0;  // d(theta)/d(omega), rad s
  Flag flags = Flag::none;

  double glass_prism_ratio() const;
};

DispersionResult angular_dispersion(const Scene& scene, Detuning d_ref, double h = default_dispersion_step);

struct ResolutionResult {
  bool resolvable = false;
  double resolving_power = 0;  // omega_ab / delta_omega
  double delta_omega = 0;      // rad/s
  Flag flags = Flag::none;
};

/// Smallest detuning split 2*delta/2 about d_ref whose far-field spots are
/// separated by at least their mean width. Search stops at max_split.
ResolutionResult spectral_resolution(const Scene& scene, Detuning d_ref, double max_split);
ResolutionResult spectral_resolution(const Scene& scene, Detuning d_ref);

}  // namespace vprism

#endif  // VPRISM_EXPERIMENT_HPP
