#ifndef VPRISM_WAVE_PROPAGATOR_HPP
#define VPRISM_WAVE_PROPAGATOR_HPP

// Scalar paraxial propagation on a uniform 1-D transverse grid.
//
// Free space uses the angular-spectrum kernel exp(i (kz - k0) dz), the slab
// uses a symmetric split step with complex phase screens exp(i k0 (n - 1) dz).
// The carrier exp(i k0 z) is factored out of every field.

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "vprism/flags.hpp"
#include "vprism/susceptibility.hpp"

namespace vprism {

/// Raised for violated grid or field preconditions.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform grid, symmetric about x = 0 when built by Grid1D::centered.
struct Grid1D {
  int n_points = 0;
  double dx = 0;  // cm
  double x0 = 0;  // left edge, cm

  static Grid1D centered(int n_points, double dx);

  double width() const { return n_points * dx; }
  double x(int i) const { return x0 + i * dx; }
  Eigen::ArrayXd coordinates() const;
  /// Angular transverse wavenumbers in FFT order, rad/cm.
  Eigen::ArrayXd wavenumbers() const;

  /// Power of two, at least 512 points, positive spacing.
  void validate() const;
  /// Width and resolution requirements for a beam of the given 1/e^2 radius.
  void validate_for_waist(double waist) const;

  bool operator==(const Grid1D&) const = default;
};

/// Complex envelope a(x) at plane z.
struct TransverseField {
  Grid1D grid;
  Eigen::ArrayXcd amplitude;
  double wavelength = 0;  // cm
  double z = 0;           // cm
  Flag flags = Flag::none;

  double k0() const;
};

struct ProbeSpec {
  double waist = 0;   // 1/e^2 intensity radius, cm
  double offset = 0;  // transverse launch position, cm
  Detuning detuning{};

  bool operator==(const ProbeSpec&) const = default;
};

/// Fraction of the grid width at each edge that must stay dark.
inline constexpr double guard_band_fraction = 0.05;
/// Largest tolerated |a| in the guard band relative to the peak |a|.
inline constexpr double guard_band_level = 1e-6;

double power(const TransverseField& f);
double centroid(const TransverseField& f);
/// Twice the intensity-weighted standard deviation; equals w for exp(-x^2/w^2).
double beam_width(const TransverseField& f);
double transmission(const TransverseField& input, const TransverseField& output);
bool guard_band_clear(const TransverseField& f);

/// Unit-power Gaussian exp(-(x - offset)^2 / w^2) with flat phase.
TransverseField make_gaussian_probe(const ProbeSpec& spec, const Grid1D& grid, double wavelength);

/// Reusable propagator for one grid and wavelength. Holds FFT plans and
/// scratch buffers, so each thread needs its own instance.
class SpectralPropagator {
 public:
  SpectralPropagator(const Grid1D& grid, double wavelength);

  const Grid1D& grid() const { return grid_; }
  double wavelength() const { return wavelength_; }

  TransverseField free(const TransverseField& f, double distance);
  TransverseField medium(const TransverseField& f, Detuning d, const MediumParams& medium,
                         const ControlField& control, int n_slices);

 private:
  void check_compatible(const TransverseField& f) const;
  void diffract(Eigen::ArrayXcd& a, double distance);

  Grid1D grid_;
  double wavelength_;
  Eigen::ArrayXd kz_minus_k0_;
  Eigen::FFT<double> fft_;
  std::vector<std::complex<double>> spectrum_;
};

/// Angular-spectrum propagation over distance >= 0.
TransverseField propagate_free(const TransverseField& f, double distance);

/// Symmetric split-step through the driven cell, n_slices >= 50.
TransverseField propagate_medium(const TransverseField& f, Detuning d, const MediumParams& medium,
                                 const ControlField& control, int n_slices);

}  // namespace vprism

#endif  // VPRISM_WAVE_PROPAGATOR_HPP
