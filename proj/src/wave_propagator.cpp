#include "vprism/wave_propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vprism {

Grid1D Grid1D::centered(int n_points, double dx) {
  Grid1D g{n_points, dx, -0.5 * (n_points - 1) * dx};
  g.validate();
  return g;
}

Eigen::ArrayXd Grid1D::coordinates() const {
  Eigen::ArrayXd x(n_points);
  for (int i = 0; i < n_points; ++i) x[i] = this->x(i);
  return x;
}

Eigen::ArrayXd Grid1D::wavenumbers() const {
  Eigen::ArrayXd k(n_points);
  const double dk = two_pi / (n_points * dx);
  for (int i = 0; i < n_points; ++i) k[i] = dk * (i < n_points / 2 ? i : i - n_points);
  return k;
}

void Grid1D::validate() const {
  if (n_points < 512 || (n_points & (n_points - 1)) != 0)
    throw GridError("grid: n_points must be a power of two >= 512, got " + std::to_string(n_points));
  if (!(dx > 0) || !std::isfinite(dx)) throw GridError("grid: dx must be positive");
  if (!std::isfinite(x0)) throw GridError("grid: x0 must be finite");
}

void Grid1D::validate_for_waist(double waist) const {
  validate();
  if (!(waist > 0)) throw GridError("grid: beam waist must be positive");
  if (width() < 8.0 * waist) throw GridError("grid: total width must be at least 8x the probe waist");
  if (dx > waist / 16.0) throw GridError("grid: dx must not exceed waist/16");
}

double TransverseField::k0() const { return two_pi / wavelength; }

double power(const TransverseField& f) { return f.amplitude.abs2().sum() * f.grid.dx; }

namespace {

double require_power(const TransverseField& f, const char* who) {
  const double p = power(f);
  if (!(p > 0) || !std::isfinite(p)) throw GridError(std::string(who) + ": field has zero or non-finite power");
  return p;
}

}  // namespace

double centroid(const TransverseField& f) {
  const Eigen::ArrayXd intensity = f.amplitude.abs2();
  const double total = intensity.sum();
  require_power(f, "centroid");
  return (intensity * f.grid.coordinates()).sum() / total;
}

double beam_width(const TransverseField& f) {
  const Eigen::ArrayXd intensity = f.amplitude.abs2();
  const double total = intensity.sum();
  require_power(f, "beam_width");
  const Eigen::ArrayXd x = f.grid.coordinates();
  const double mean = (intensity * x).sum() / total;
  const double var = (intensity * (x - mean).square()).sum() / total;
  return 2.0 * std::sqrt(var);
}

double transmission(const TransverseField& input, const TransverseField& output) {
  if (!(input.grid == output.grid)) throw GridError("transmission: fields live on different grids");
  const double p_in = require_power(input, "transmission");
  return power(output) / p_in;
}

bool guard_band_clear(const TransverseField& f) {
  const Eigen::ArrayXd mag = f.amplitude.abs();
  const double peak = mag.maxCoeff();
  if (!(peak > 0)) return true;
  const int n = f.grid.n_points;
  const int band = static_cast<int>(std::ceil(guard_band_fraction * n));
  const double edge = std::max(mag.head(band).maxCoeff(), mag.tail(band).maxCoeff());
  return edge < guard_band_level * peak;
}

TransverseField make_gaussian_probe(const ProbeSpec& spec, const Grid1D& grid, double wavelength) {
  grid.validate_for_waist(spec.waist);
  if (!(wavelength > 0)) throw GridError("probe: wavelength must be positive");
  const double center = grid.x0 + 0.5 * (grid.n_points - 1) * grid.dx;
  if (std::abs(spec.offset - center) > 0.25 * grid.width())
    throw GridError("probe: offset must lie within the central half of the grid");

  TransverseField f;
  f.grid = grid;
  f.wavelength = wavelength;
  const Eigen::ArrayXd u = (grid.coordinates() - spec.offset) / spec.waist;
  f.amplitude = (-u.square()).exp().cast<std::complex<double>>();
  f.amplitude /= std::sqrt(power(f));
  if (!guard_band_clear(f)) throw GridError("probe: beam reaches the grid guard band");
  return f;
}

SpectralPropagator::SpectralPropagator(const Grid1D& grid, double wavelength)
    : grid_(grid), wavelength_(wavelength), spectrum_(static_cast<std::size_t>(grid.n_points)) {
  grid_.validate();
  if (!(wavelength > 0)) throw GridError("propagator: wavelength must be positive");
  const double k0 = two_pi / wavelength;
  const Eigen::ArrayXd kx2 = grid_.wavenumbers().square();
  if ((kx2 >= k0 * k0).any()) throw GridError("propagator: grid resolves evanescent waves; increase dx");
  // kz - k0 = -kx^2 / (k0 + kz), free of cancellation for small kx
  kz_minus_k0_ = -kx2 / (k0 + (k0 * k0 - kx2).sqrt());
}

void SpectralPropagator::check_compatible(const TransverseField& f) const {
  if (!(f.grid == grid_)) throw GridError("propagator: field grid does not match");
  if (f.wavelength != wavelength_) throw GridError("propagator: field wavelength does not match");
}

void SpectralPropagator::diffract(Eigen::ArrayXcd& a, double distance) {
  if (distance == 0) return;
  const auto n = static_cast<Eigen::Index>(grid_.n_points);
  fft_.fwd(spectrum_.data(), a.data(), n);
  for (Eigen::Index i = 0; i < n; ++i) spectrum_[i] *= std::polar(1.0, kz_minus_k0_[i] * distance);
  fft_.inv(a.data(), spectrum_.data(), n);
}

TransverseField SpectralPropagator::free(const TransverseField& f, double distance) {
  check_compatible(f);
  if (!(distance >= 0)) throw std::invalid_argument("propagate_free: distance must be non-negative");
  TransverseField out = f;
  diffract(out.amplitude, distance);
  out.z = f.z + distance;
  if (!guard_band_clear(out)) out.flags |= Flag::guard_band;
  return out;
}

TransverseField SpectralPropagator::medium(const TransverseField& f, Detuning d, const MediumParams& medium,
                                           const ControlField& control, int n_slices) {
  check_compatible(f);
  medium.validate();
  control.validate();
  if (n_slices < 50) throw std::invalid_argument("propagate_medium: n_slices must be at least 50");

  const double dz = medium.cell_length / n_slices;
  const Eigen::ArrayXcd n_minus_1 = index_profile_minus_one(d, grid_.coordinates(), medium, control);
  const std::complex<double> i_k0_dz(0.0, f.k0() * dz);
  const Eigen::ArrayXcd screen = (i_k0_dz * n_minus_1).exp();

  TransverseField out = f;
  // half steps between adjacent screens are merged into one full step
  diffract(out.amplitude, 0.5 * dz);
  for (int s = 0; s < n_slices; ++s) {
    out.amplitude *= screen;
    diffract(out.amplitude, s + 1 == n_slices ? 0.5 * dz : dz);
    if (!guard_band_clear(out)) out.flags |= Flag::guard_band;
  }
  out.z = f.z + medium.cell_length;
  return out;
}

TransverseField propagate_free(const TransverseField& f, double distance) {
  SpectralPropagator p(f.grid, f.wavelength);
  return p.free(f, distance);
}

TransverseField propagate_medium(const TransverseField& f, Detuning d, const MediumParams& medium,
                                 const ControlField& control, int n_slices) {
  SpectralPropagator p(f.grid, f.wavelength);
  return p.medium(f, d, medium, control, n_slices);
}

}  // namespace vprism
