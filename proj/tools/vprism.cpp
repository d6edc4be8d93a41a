// vprism: command-line front end for the driven-vapor prism simulator.
//
//   vprism chi     [--config F] [--out F] [--points N] [--min-hz X] [--max-hz X]
//   vprism sweep   [...] [--threads N] [--summary F] [--reference-hz X]
//   vprism profile [...] [--detunings-hz a,b,...] [--raw]
//   vprism trace   [...] [--detuning-hz X]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vprism/config.hpp"
#include "vprism/csv_output.hpp"

namespace {

using namespace vprism;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Output {
 public:
  explicit Output(const std::optional<std::string>& path) {
    if (path && *path != "-") {
      file_.open(*path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + *path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string default_summary_path(const std::optional<std::string>& out) {
  if (!out || *out == "-") return "sweep_summary.csv";
  std::filesystem::path p(*out);
  return (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven-vapor prism simulator"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> out_path;
  int threads = 0;
  std::optional<int> points;
  std::optional<double> min_hz, max_hz;
  app.add_option("--config", config_path, "Scene configuration file (key: value)")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");
  app.add_option("--threads", threads, "Worker threads for sweeps (0: hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--points", points, "Number of detuning points");
  app.add_option("--min-hz", min_hz, "Lower detuning bound, Hz");
  app.add_option("--max-hz", max_hz, "Upper detuning bound, Hz");

  auto* chi = app.add_subcommand("chi", "Susceptibility and index vs detuning");
  auto* sweep = app.add_subcommand("sweep", "Deflection and transmission sweep with figures of merit");
  auto* profile = app.add_subcommand("profile", "Input and detector-plane intensity profiles");
  auto* trace = app.add_subcommand("trace", "Ray trajectory through the cell");

  std::optional<std::string> summary_path;
  std::optional<double> reference_hz;
  sweep->add_option("--summary", summary_path, "Summary CSV path (default: <out>_summary.csv)");
  sweep->add_option("--reference-hz", reference_hz, "Detuning for dispersion and resolution, Hz");

  std::optional<std::vector<double>> profile_hz;
  bool raw = false;
  profile->add_option("--detunings-hz", profile_hz, "Detunings, Hz")->delimiter(',');
  profile->add_flag("--raw", raw, "Unnormalized |a|^2 (integrates to the transmitted power)");

  std::optional<double> trace_hz;
  trace->add_option("--detuning-hz", trace_hz, "Detuning, Hz");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(read_file(config_path));
    if (points) cfg.sweep_points = *points;
    if (min_hz) cfg.sweep_min_hz = *min_hz;
    if (max_hz) cfg.sweep_max_hz = *max_hz;
    if (out_path) cfg.output = *out_path;
    if (reference_hz) cfg.reference_hz = *reference_hz;
    if (profile_hz) cfg.profile_detunings_hz = *profile_hz;
    if (trace_hz) cfg.trace_detuning_hz = *trace_hz;
    // command-line overrides go through the same validation as the file
    cfg = parse_config(format_config(cfg));

    std::string command = cfg.command.value_or("");
    if (*chi) command = "chi";
    if (*sweep) command = "sweep";
    if (*profile) command = "profile";
    if (*trace) command = "trace";
    if (command.empty()) {
      std::cerr << "no subcommand given (chi | sweep | profile | trace)\n" << app.help();
      return 2;
    }

    const Scene scene = to_scene(cfg);
    const SweepBounds bounds = sweep_bounds(cfg, scene);
    Output out(cfg.output);

    if (command == "chi") {
      write_chi_csv(out.stream(), scene, bounds.min, bounds.max, bounds.points);
    } else if (command == "sweep") {
      const auto rows = detuning_sweep(scene, bounds.min, bounds.max, bounds.points, threads);
      write_sweep_csv(out.stream(), rows);

      SweepSummary summary;
      summary.reference_hz = cfg.reference_hz.value_or(0.0);
      const Detuning ref = Detuning::from_hz(summary.reference_hz);
      const double step = hz_to_rad_per_s(cfg.dispersion_step_hz.value_or(rad_per_s_to_hz(default_dispersion_step)));
      summary.dispersion = angular_dispersion(scene, ref, step);
      summary.resolution = spectral_resolution(scene, ref);
      const std::string path = summary_path.value_or(default_summary_path(cfg.output));
      std::ofstream sf(path, std::ios::binary);
      if (!sf) throw std::runtime_error("cannot open summary file '" + path + "'");
      write_summary_csv(sf, summary);
      for (const SweepRow& r : rows)
        if (r.flags != Flag::none) {
          std::cerr << "warning: some rows carry flags; see the flags column\n";
          break;
        }
    } else if (command == "profile") {
      std::vector<Detuning> d;
      for (double hz : cfg.profile_detunings_hz.value_or(std::vector<double>{-20e3, 0.0, 20e3}))
        d.push_back(Detuning::from_hz(hz));
      write_profile_csv(out.stream(), scene, d, raw);
    } else {
      const Detuning d = Detuning::from_hz(cfg.trace_detuning_hz.value_or(10e3));
      const Trajectory t = trace_ray(d, scene.probe.offset, 0.0, scene.medium, scene.control, scene.ray_steps);
      write_trace_csv(out.stream(), t);
      if (t.paraxial_violation) std::cerr << "warning: paraxial limit exceeded\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
