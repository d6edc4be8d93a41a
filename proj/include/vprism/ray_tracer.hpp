#ifndef VPRISM_RAY_TRACER_HPP
#define VPRISM_RAY_TRACER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "vprism/susceptibility.hpp"

namespace vprism {

/// Paraxial angles at or beyond this are flagged.
inline constexpr double paraxial_angle_limit = 0.5;

struct RayState {
  double z;      // cm
  double x;      // cm
  double angle;  // dx/dz, rad
};

struct Trajectory {
  std::vector<RayState> states;
  bool paraxial_violation = false;
};

/// Transverse index gradient d(Re n)/dx as a function of x, 1/cm.
using IndexGradient = std::function<double(double)>;

/// Integrates x'' = g(x) over [0, length] with fixed-step RK4.
Trajectory trace_ray(const IndexGradient& gradient, double x0, double theta0, double length, int n_steps);

/// Ray through the driven medium at detuning d.
Trajectory trace_ray(Detuning d, double x0, double theta0, const MediumParams& medium,
                     const ControlField& control, int n_steps);

/// Exit slope dx/dz of the last state.
double exit_angle(const Trajectory& t);

/// One-line turning-angle estimate L * d(Re n)/dx at the launch offset.
inline double deflection_estimate(Detuning d, double x0, const MediumParams& medium, const ControlField& control) {
  return medium.cell_length * grad_index(d, x0, medium, control);
}

}  // namespace vprism

#endif  // VPRISM_RAY_TRACER_HPP
