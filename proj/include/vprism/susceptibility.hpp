#ifndef VPRISM_SUSCEPTIBILITY_HPP
#define VPRISM_SUSCEPTIBILITY_HPP

// Linear response of a coherently driven Lambda medium.
//
// The probe couples |a> - |b>, the control couples |a> - |c>. In steady state
// the probe coherence gives
//
//   chi = eta * gamma_r * (dw + i gamma_cb) / (Omega^2 + (gamma - i dw)(gamma_cb - i dw))
//
// with eta = 3 lambda^3 N / (16 pi^2). The real part of this expression
// expands to the familiar dispersion formula evaluated by re_chi(); the two
// are kept as separate code paths and cross-checked in tests.
//
// complex_chi() evaluates the equivalent continued fraction
//
//   chi = eta * gamma_r * i / (gamma - i dw + Omega^2 / (gamma_cb - i dw))
//
// whose denominator has a real part that is a sum of positive terms, so
// Im chi > 0 holds by construction and nothing cancels when Omega^2 is small
// against gamma * gamma_cb.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "vprism/constants.hpp"

namespace vprism {

template <typename Scalar>
struct MediumParamsT {
  Scalar lambda_ab;    // resonance wavelength, cm
  Scalar density;      // number density, cm^-3
  Scalar gamma;        // optical coherence decay, rad/s
  Scalar gamma_r;      // radiative rate, rad/s
  Scalar gamma_cb;     // ground-state coherence decay, rad/s
  Scalar cell_length;  // cm

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("medium: ") + what); };
    if (!(lambda_ab > 0)) fail("lambda_ab must be positive");
    if (!(density >= 0) || !std::isfinite(density)) fail("density must be finite and non-negative");
    if (!(gamma > 0)) fail("gamma must be positive");
    if (!(gamma_r > 0)) fail("gamma_r must be positive");
    if (!(gamma_cb > 0)) fail("gamma_cb must be positive");
    if (!(cell_length > 0)) fail("cell_length must be positive");
    if (gamma_cb > gamma) fail("gamma_cb must not exceed gamma");
    if (lambda_ab < Scalar(1e-5) || lambda_ab > Scalar(1e-3)) fail("lambda_ab outside [1e-5, 1e-3] cm");
  }

  bool operator==(const MediumParamsT&) const = default;
};

template <typename Scalar>
struct ControlFieldT {
  Scalar omega_peak;  // peak Rabi frequency, rad/s
  Scalar waist;       // cm
  Scalar center;      // cm

  void validate() const {
    if (!(omega_peak >= 0) || !std::isfinite(omega_peak))
      throw std::invalid_argument("control: omega_peak must be finite and non-negative");
    if (!(waist > 0)) throw std::invalid_argument("control: waist must be positive");
    if (!std::isfinite(center)) throw std::invalid_argument("control: center must be finite");
  }

  bool operator==(const ControlFieldT&) const = default;
};

/// Two-photon detuning dw = w - w_ab, rad/s.
template <typename Scalar>
struct DetuningT {
  Scalar value{};

  constexpr DetuningT() = default;
  constexpr explicit DetuningT(Scalar rad_per_s) : value(rad_per_s) {}

  static constexpr DetuningT from_hz(Scalar hz) { return DetuningT(two_pi_v<Scalar> * hz); }
  constexpr Scalar hz() const { return value / two_pi_v<Scalar>; }
  constexpr DetuningT operator-() const { return DetuningT(-value); }
  bool operator==(const DetuningT&) const = default;
};

template <typename Scalar>
using SusceptibilityT = std::complex<Scalar>;

using MediumParams = MediumParamsT<double>;
using ControlField = ControlFieldT<double>;
using Detuning = DetuningT<double>;
using Susceptibility = SusceptibilityT<double>;

/// Dimensionless line-strength factor 3 lambda^3 N / (16 pi^2).
template <typename Scalar>
Scalar eta(const MediumParamsT<Scalar>& m) {
  return Scalar(3) * m.lambda_ab * m.lambda_ab * m.lambda_ab * m.density /
         (Scalar(16) * pi_v<Scalar> * pi_v<Scalar>);
}

namespace detail {

template <typename Scalar>
void require_nondegenerate(Scalar dw, Scalar omega, const MediumParamsT<Scalar>& m) {
  if (!(omega >= 0)) throw std::invalid_argument("Rabi frequency must be non-negative");
  if (dw == 0 && omega == 0 && m.gamma == 0 && m.gamma_cb == 0)
    throw std::invalid_argument("degenerate susceptibility input (all rates and detuning zero)");
}

}  // namespace detail

/// Real part of chi in its printed dispersion form.
template <typename Scalar>
Scalar re_chi(DetuningT<Scalar> d, Scalar omega, const MediumParamsT<Scalar>& m) {
  detail::require_nondegenerate(d.value, omega, m);
  const Scalar dw = d.value;
  const Scalar dw2 = dw * dw;
  const Scalar om2 = omega * omega;
  const Scalar g = m.gamma, gcb = m.gamma_cb;
  const Scalar num = dw * (om2 - gcb * gcb - dw2);
  const Scalar a = om2 + gcb * g - dw2;
  const Scalar b = gcb + g;
  const Scalar den = a * a + dw2 * b * b;
  return eta(m) * m.gamma_r * num / den;
}

namespace detail {

/// Continued-fraction denominator gamma - i dw + Omega^2 / (gamma_cb - i dw).
template <typename Scalar>
std::complex<Scalar> lambda_denominator(Scalar dw, Scalar omega, const MediumParamsT<Scalar>& m) {
  const Scalar s = m.gamma_cb * m.gamma_cb + dw * dw;
  const Scalar om2 = omega * omega;
  return {m.gamma + om2 * m.gamma_cb / s, dw * (om2 - s) / s};
}

}  // namespace detail

/// Complex steady-state susceptibility; Im chi > 0 for every valid input.
template <typename Scalar>
SusceptibilityT<Scalar> complex_chi(DetuningT<Scalar> d, Scalar omega, const MediumParamsT<Scalar>& m) {
  detail::require_nondegenerate(d.value, omega, m);
  const std::complex<Scalar> e = detail::lambda_denominator(d.value, omega, m);
  const Scalar scale = eta(m) * m.gamma_r / std::norm(e);
  // i / e = (Im e + i Re e) / |e|^2
  return {scale * e.imag(), scale * e.real()};
}

/// n - 1 for n = sqrt(1 + 4 pi chi), written as 4 pi chi / (n + 1) so that
/// small susceptibilities keep their relative precision.
template <typename Scalar>
std::complex<Scalar> index_minus_one(SusceptibilityT<Scalar> chi) {
  const std::complex<Scalar> s = Scalar(1) + Scalar(4) * pi_v<Scalar> * chi;
  if (!(s.real() > 0)) throw std::domain_error("non-physical susceptibility: 1 + 4 pi Re chi <= 0");
  const std::complex<Scalar> n = std::sqrt(s);
  return Scalar(4) * pi_v<Scalar> * chi / (n + Scalar(1));
}

/// Principal-branch n = sqrt(1 + 4 pi chi).
template <typename Scalar>
std::complex<Scalar> refractive_index(SusceptibilityT<Scalar> chi) {
  return Scalar(1) + index_minus_one(chi);
}

/// Gaussian Rabi-frequency profile Omega0 exp(-(x - c)^2 / w^2).
template <typename Scalar>
Scalar rabi_at(Scalar x, const ControlFieldT<Scalar>& c) {
  const Scalar u = (x - c.center) / c.waist;
  return c.omega_peak * std::exp(-u * u);
}

/// Complex index minus one at each grid point.
template <typename Scalar, typename Derived>
Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1> index_profile_minus_one(
    DetuningT<Scalar> d, const Eigen::ArrayBase<Derived>& grid_x, const MediumParamsT<Scalar>& m,
    const ControlFieldT<Scalar>& c) {
  Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1> out(grid_x.size());
  for (Eigen::Index i = 0; i < grid_x.size(); ++i)
    out[i] = index_minus_one(complex_chi(d, rabi_at(Scalar(grid_x[i]), c), m));
  return out;
}

/// Pointwise complex index n(x) on a strictly increasing grid.
template <typename Scalar, typename Derived>
Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1> index_profile(DetuningT<Scalar> d,
                                                                    const Eigen::ArrayBase<Derived>& grid_x,
                                                                    const MediumParamsT<Scalar>& m,
                                                                    const ControlFieldT<Scalar>& c) {
  for (Eigen::Index i = 1; i < grid_x.size(); ++i)
    if (!(grid_x[i] > grid_x[i - 1])) throw std::invalid_argument("index_profile: grid must be strictly increasing");
  return index_profile_minus_one(d, grid_x, m, c) + Scalar(1);
}

/// d(Re n)/dx by the chain rule through Omega(x).
template <typename Scalar>
Scalar grad_index(DetuningT<Scalar> d, Scalar x, const MediumParamsT<Scalar>& m, const ControlFieldT<Scalar>& c) {
  using C = std::complex<Scalar>;
  const Scalar omega = rabi_at(x, c);
  if (omega == 0) return Scalar(0);
  const Scalar dw = d.value;
  const C e = detail::lambda_denominator(dw, omega, m);
  const C chi = complex_chi(d, omega, m);
  // chi = k / e(Omega) with de/dOmega = 2 Omega / (gamma_cb - i dw)
  const C dchi_domega = -chi / e * (Scalar(2) * omega) / C(m.gamma_cb, -dw);
  const Scalar domega_dx = Scalar(-2) * (x - c.center) / (c.waist * c.waist) * omega;
  const C n = std::sqrt(Scalar(1) + Scalar(4) * pi_v<Scalar> * chi);
  const C dn_dchi = Scalar(2) * pi_v<Scalar> / n;
  return (dn_dchi * dchi_domega).real() * domega_dx;
}

/// Central-difference d(Re n)/dx with step waist * 1e-4.
template <typename Scalar>
Scalar grad_index_fd(DetuningT<Scalar> d, Scalar x, const MediumParamsT<Scalar>& m,
                     const ControlFieldT<Scalar>& c) {
  const Scalar h = c.waist * Scalar(1e-4);
  auto re_n1 = [&](Scalar xx) { return index_minus_one(complex_chi(d, rabi_at(xx, c), m)).real(); };
  return (re_n1(x + h) - re_n1(x - h)) / (Scalar(2) * h);
}

}  // namespace vprism

#endif  // VPRISM_SUSCEPTIBILITY_HPP
