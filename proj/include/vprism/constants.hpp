#ifndef VPRISM_CONSTANTS_HPP
#define VPRISM_CONSTANTS_HPP

#include <numbers>

namespace vprism {

// Gaussian (CGS) units throughout: cm, s, rad/s.

template <typename Scalar>
inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline constexpr Scalar two_pi_v = Scalar(2) * std::numbers::pi_v<Scalar>;

inline constexpr double pi = pi_v<double>;
inline constexpr double two_pi = two_pi_v<double>;

/// Speed of light in vacuum, cm/s.
inline constexpr double speed_of_light = 2.99792458e10;

inline constexpr double mm_per_cm = 10.0;
inline constexpr double nm_per_cm = 1e7;

/// Angular dispersion of an ordinary glass prism, rad/nm.
inline constexpr double glass_prism_dispersion_per_nm = 1e-4;

/// Convert an ordinary frequency (Hz) to an angular rate (rad/s).
constexpr double hz_to_rad_per_s(double hz) { return two_pi * hz; }
constexpr double rad_per_s_to_hz(double w) { return w / two_pi; }

constexpr double mm_to_cm(double mm) { return mm / mm_per_cm; }
constexpr double cm_to_mm(double cm) { return cm * mm_per_cm; }
constexpr double nm_to_cm(double nm) { return nm / nm_per_cm; }
constexpr double cm_to_nm(double cm) { return cm * nm_per_cm; }

}  // namespace vprism

#endif  // VPRISM_CONSTANTS_HPP
