#include "vprism/ray_tracer.hpp"

namespace vprism {

Trajectory trace_ray(const IndexGradient& gradient, double x0, double theta0, double length, int n_steps) {
  if (n_steps < 100) throw std::invalid_argument("trace_ray: n_steps must be at least 100");
  if (!(length > 0)) throw std::invalid_argument("trace_ray: length must be positive");

  Trajectory t;
  t.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  t.states.push_back({0.0, x0, theta0});

  const double h = length / n_steps;
  double x = x0, v = theta0;
  for (int i = 1; i <= n_steps; ++i) {
    const double a1 = gradient(x);
    const double x2 = x + 0.5 * h * v, v2 = v + 0.5 * h * a1;
    const double a2 = gradient(x2);
    const double x3 = x + 0.5 * h * v2, v3 = v + 0.5 * h * a2;
    const double a3 = gradient(x3);
    const double x4 = x + h * v3, v4 = v + h * a3;
    const double a4 = gradient(x4);
    x += h / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4);
    v += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    // z from the step index so the last state lands exactly on the cell end
    const double z = (i == n_steps) ? length : h * i;
    t.states.push_back({z, x, v});
    if (std::abs(v) >= paraxial_angle_limit) t.paraxial_violation = true;
  }
  return t;
}

Trajectory trace_ray(Detuning d, double x0, double theta0, const MediumParams& medium, const ControlField& control,
                     int n_steps) {
  medium.validate();
  control.validate();
  return trace_ray([&](double x) { return grad_index(d, x, medium, control); }, x0, theta0, medium.cell_length,
                   n_steps);
}

double exit_angle(const Trajectory& t) {
  if (t.states.empty()) throw std::invalid_argument("exit_angle: empty trajectory");
  return t.states.back().angle;
}

}  // namespace vprism
