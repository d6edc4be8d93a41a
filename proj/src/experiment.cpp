#include "vprism/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace vprism {

void Scene::validate() const {
  medium.validate();
  control.validate();
  if (!(detector_distance >= 0)) throw std::invalid_argument("scene: detector_distance must be non-negative");
  if (std::abs(probe.offset - control.center) > 2.0 * control.waist)
    throw std::invalid_argument("scene: probe offset must lie within 2 control waists of the control axis");
  if (n_slices < 50) throw std::invalid_argument("scene: n_slices must be at least 50");
  if (ray_steps < 100) throw std::invalid_argument("scene: ray_steps must be at least 100");
  grid.validate_for_waist(probe.waist);
}

Scene default_scene() {
  Scene s;
  s.medium = MediumParams{
      .lambda_ab = 7.95e-5,
      .density = 3e11,
      .gamma = hz_to_rad_per_s(300e6),
      .gamma_r = hz_to_rad_per_s(5.75e6),
      .gamma_cb = hz_to_rad_per_s(1e3),
      .cell_length = 7.5,
  };
  s.control = ControlField{.omega_peak = hz_to_rad_per_s(30e6), .waist = 0.38, .center = 0.0};
  // 0.7 mm intensity FWHM
  s.probe = ProbeSpec{.waist = 0.07 / std::sqrt(2.0 * std::log(2.0)),
                      .offset = 0.38 / std::sqrt(2.0),
                      .detuning = Detuning{}};
  s.detector_distance = 230.0;
  s.grid = Grid1D::centered(4096, 0.002);
  s.n_slices = 200;
  s.ray_steps = 10000;
  return s;
}

Scene mirrored(const Scene& s) {
  Scene m = s;
  m.probe.offset = 2.0 * s.control.center - s.probe.offset;
  return m;
}

WaveRun propagate_scene(const Scene& scene, Detuning d) {
  SpectralPropagator prop(scene.grid, scene.medium.lambda_ab);
  WaveRun run;
  run.input = make_gaussian_probe(scene.probe, scene.grid, scene.medium.lambda_ab);
  run.exit = prop.medium(run.input, d, scene.medium, scene.control, scene.n_slices);
  run.detector = prop.free(run.exit, scene.detector_distance);
  return run;
}

namespace {

struct FarSpot {
  double exit_centroid = 0;
  double centroid = 0;
  double width = 0;
  double transmission = 0;
  Flag flags = Flag::none;
};

FarSpot far_spot(const Scene& scene, Detuning d) {
  const WaveRun run = propagate_scene(scene, d);
  FarSpot s;
  s.transmission = transmission(run.input, run.exit);
  s.exit_centroid = centroid(run.exit);
  s.centroid = centroid(run.detector);
  s.width = beam_width(run.detector);
  s.flags = run.exit.flags | run.detector.flags;
  return s;
}

double wave_angle(const Scene& scene, const FarSpot& s) {
  if (scene.detector_distance == 0) return 0.0;
  return (s.centroid - s.exit_centroid) / scene.detector_distance;
}

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<double> uniform_detunings(Detuning d_min, Detuning d_max, int n_points) {
  if (n_points < 3) throw std::invalid_argument("sweep: n_points must be at least 3");
  if (!(d_min.value < d_max.value)) throw std::invalid_argument("sweep: d_min must be below d_max");
  std::vector<double> d(static_cast<std::size_t>(n_points));
  // offsets from the midpoint keep symmetric sweeps exactly antisymmetric
  const double step = (d_max.value - d_min.value) / (n_points - 1);
  const double center = 0.5 * (d_min.value + d_max.value);
  for (int i = 0; i < n_points; ++i) d[i] = center + (i - 0.5 * (n_points - 1)) * step;
  for (int i = 0; i < n_points; ++i)
    if (std::abs(d[i]) < 1e-9 * step) d[i] = 0.0;
  return d;
}

}  // namespace

SweepRow run_point(const Scene& scene, Detuning d) {
  scene.validate();
  SweepRow row;
  row.detuning = d.value;

  const Trajectory ray = trace_ray(d, scene.probe.offset, 0.0, scene.medium, scene.control, scene.ray_steps);
  row.theta_ray = exit_angle(ray);
  if (ray.paraxial_violation) row.flags |= Flag::paraxial;

  const FarSpot spot = far_spot(scene, d);
  row.theta_wave = wave_angle(scene, spot);
  row.transmission = spot.transmission;
  row.far_centroid = spot.centroid;
  row.far_width = spot.width;
  row.flags |= spot.flags;
  return row;
}

std::vector<SweepRow> detuning_sweep(const Scene& scene, Detuning d_min, Detuning d_max, int n_points, int threads) {
  scene.validate();
  const std::vector<double> d = uniform_detunings(d_min, d_max, n_points);
  std::vector<SweepRow> rows(d.size());
  parallel_for(n_points, threads, [&](int i) { rows[i] = run_point(scene, Detuning(d[i])); });
  return rows;
}

std::vector<double> ray_angle_sweep(const Scene& scene, Detuning d_min, Detuning d_max, int n_points) {
  scene.validate();
  const std::vector<double> d = uniform_detunings(d_min, d_max, n_points);
  std::vector<double> theta(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    theta[i] = exit_angle(
        trace_ray(Detuning(d[i]), scene.probe.offset, 0.0, scene.medium, scene.control, scene.ray_steps));
  return theta;
}

double DispersionResult::glass_prism_ratio() const { return std::abs(per_nm) / glass_prism_dispersion_per_nm; }

DispersionResult angular_dispersion(const Scene& scene, Detuning d_ref, double h) {
  scene.validate();
  if (!(h > 0)) throw std::invalid_argument("angular_dispersion: step must be positive");
  const double plus = wave_angle(scene, far_spot(scene, Detuning(d_ref.value + h)));
  const double minus = wave_angle(scene, far_spot(scene, Detuning(d_ref.value - h)));

  DispersionResult r;
  r.per_rad_per_s = (plus - minus) / (2.0 * h);
  // d(omega)/d(lambda) = -2 pi c / lambda^2
  const double lambda = scene.medium.lambda_ab;
  const double per_cm = -r.per_rad_per_s * two_pi * speed_of_light / (lambda * lambda);
  r.per_nm = per_cm / nm_per_cm;
  if (std::max(std::abs(plus), std::abs(minus)) < angle_noise_floor) r.flags |= Flag::noise_floor;
  return r;
}

ResolutionResult spectral_resolution(const Scene& scene, Detuning d_ref) {
  return spectral_resolution(scene, d_ref, 2.0 * scene.control.omega_peak);
}

ResolutionResult spectral_resolution(const Scene& scene, Detuning d_ref, double max_split) {
  scene.validate();
  ResolutionResult r;
  auto margin = [&](double split) {
    FarSpot a = far_spot(scene, Detuning(d_ref.value + 0.5 * split));
    FarSpot b = far_spot(scene, Detuning(d_ref.value - 0.5 * split));
    r.flags |= a.flags | b.flags;
    return std::abs(a.centroid - b.centroid) - 0.5 * (a.width + b.width);
  };

  // doubling scan for the first resolved split, then bisection
  double lo = 0.0, hi = two_pi;
  while (margin(hi) < 0) {
    lo = hi;
    hi *= 2.0;
    if (hi > max_split) {
      r.flags |= Flag::unresolvable;
      return r;
    }
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0 ? hi : lo) = mid;
  }
  r.resolvable = true;
  r.delta_omega = hi;
  r.resolving_power = two_pi * speed_of_light / scene.medium.lambda_ab / hi;
  return r;
}

}  // namespace vprism
