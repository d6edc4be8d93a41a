#include "vprism/csv_output.hpp"

#include <cstdio>

namespace vprism {

std::string format_number(double v) {
  if (v == 0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

}  // namespace

void write_chi_csv(std::ostream& os, const Scene& scene, Detuning d_min, Detuning d_max, int n_points) {
  scene.validate();
  if (n_points < 2) throw std::invalid_argument("chi: at least 2 points required");
  if (!(d_min.value < d_max.value)) throw std::invalid_argument("chi: min detuning must be below max");
  const double omega = rabi_at(scene.probe.offset, scene.control);
  const double step = (d_max.value - d_min.value) / (n_points - 1);
  const double center = 0.5 * (d_min.value + d_max.value);
  os << chi_header << '\n';
  for (int i = 0; i < n_points; ++i) {
    double dw = center + (i - 0.5 * (n_points - 1)) * step;
    if (std::abs(dw) < 1e-9 * step) dw = 0.0;
    const Detuning d(dw);
    const Susceptibility chi = complex_chi(d, omega, scene.medium);
    const std::complex<double> n1 = index_minus_one(chi);
    write_row(os, {d.hz(), chi.real(), chi.imag(), n1.real(), n1.imag()});
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << sweep_header << '\n';
  for (const SweepRow& r : rows) {
    os << format_number(rad_per_s_to_hz(r.detuning)) << ',' << format_number(r.theta_ray) << ','
       << format_number(r.theta_wave) << ',' << format_number(r.transmission) << ','
       << format_number(cm_to_mm(r.far_centroid)) << ',' << format_number(cm_to_mm(r.far_width)) << ','
       << to_string(r.flags) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const SweepSummary& s) {
  os << summary_header << '\n';
  os << "reference_detuning_hz," << format_number(s.reference_hz) << '\n';
  os << "dtheta_dlambda_per_nm," << format_number(s.dispersion.per_nm) << '\n';
  os << "glass_prism_ratio," << format_number(s.dispersion.glass_prism_ratio()) << '\n';
  os << "resolving_power," << (s.resolution.resolvable ? format_number(s.resolution.resolving_power) : "unresolvable")
     << '\n';
  os << "resolved_split_hz,"
     << (s.resolution.resolvable ? format_number(rad_per_s_to_hz(s.resolution.delta_omega)) : "unresolvable") << '\n';
  os << "flags," << to_string(s.dispersion.flags | s.resolution.flags) << '\n';
}

void write_profile_csv(std::ostream& os, const Scene& scene, const std::vector<Detuning>& detunings, bool raw) {
  scene.validate();
  const Eigen::ArrayXd x = scene.grid.coordinates();
  os << profile_header << '\n';

  auto emit = [&](double hz, const char* plane, const Eigen::ArrayXd& intensity) {
    const double scale = raw ? 1.0 : intensity.maxCoeff();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      os << format_number(hz) << ',' << plane << ',' << format_number(cm_to_mm(x[i])) << ','
         << format_number(scale > 0 ? intensity[i] / scale : 0.0) << '\n';
    }
  };

  for (const Detuning& d : detunings) {
    const WaveRun run = propagate_scene(scene, d);
    Eigen::ArrayXd control(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double peak = scene.control.omega_peak;
      const double omega = peak > 0 ? rabi_at(x[i], scene.control) / peak : 0.0;
      control[i] = omega * omega;
    }
    emit(d.hz(), "control", control);
    emit(d.hz(), "input", run.input.amplitude.abs2());
    emit(d.hz(), "detector", run.detector.amplitude.abs2());
  }
}

void write_trace_csv(std::ostream& os, const Trajectory& t) {
  os << trace_header << '\n';
  for (const RayState& s : t.states) write_row(os, {s.z, cm_to_mm(s.x), s.angle});
  if (t.paraxial_violation) os << "# warning: paraxial limit exceeded (|angle| >= 0.5 rad)\n";
}

}  // namespace vprism
