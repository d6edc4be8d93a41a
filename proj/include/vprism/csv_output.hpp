#ifndef VPRISM_CSV_OUTPUT_HPP
#define VPRISM_CSV_OUTPUT_HPP

// CSV emitters for the command-line front end. Headers and column order are
// fixed; numbers carry 9 significant digits; lines end in LF.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vprism/experiment.hpp"

namespace vprism {

inline constexpr std::string_view chi_header = "detuning_hz,re_chi,im_chi,re_n_minus_1,im_n";
inline constexpr std::string_view sweep_header =
    "detuning_hz,theta_ray_rad,theta_wave_rad,transmission,far_centroid_mm,far_width_mm,flags";
inline constexpr std::string_view summary_header = "quantity,value";
inline constexpr std::string_view profile_header = "detuning_hz,plane,x_mm,intensity";
inline constexpr std::string_view trace_header = "z_cm,x_mm,angle_rad";

/// "%.9g", with negative zero printed as 0.
std::string format_number(double v);

/// chi and n - 1 at the Rabi frequency seen by the probe at its offset.
void write_chi_csv(std::ostream& os, const Scene& scene, Detuning d_min, Detuning d_max, int n_points);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct SweepSummary {
  double reference_hz = 0;
  DispersionResult dispersion;
  ResolutionResult resolution;
};

void write_summary_csv(std::ostream& os, const SweepSummary& summary);

/// Control and probe at the cell input and the probe at the detector for
/// each detuning. Normalized to unit peak per plane unless raw, in which case
/// the intensity is |a|^2 of a unit-power input (integrates to the power).
void write_profile_csv(std::ostream& os, const Scene& scene, const std::vector<Detuning>& detunings, bool raw);

void write_trace_csv(std::ostream& os, const Trajectory& t);

}  // namespace vprism

#endif  // VPRISM_CSV_OUTPUT_HPP
