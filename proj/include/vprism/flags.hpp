#ifndef VPRISM_FLAGS_HPP
#define VPRISM_FLAGS_HPP

#include <cstdint>
#include <string>

namespace vprism {

/// Non-fatal run conditions, carried with results instead of aborting sweeps.
enum class Flag : std::uint32_t {
  none = 0,
  guard_band = 1u << 0,   // field reached the grid edge band
  paraxial = 1u << 1,     // ray angle reached the paraxial limit
  noise_floor = 1u << 2,  // signal below numerical noise
  unresolvable = 1u << 3  // resolution search left its bounds
};

constexpr Flag operator|(Flag a, Flag b) {
  return static_cast<Flag>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
constexpr Flag& operator|=(Flag& a, Flag b) { return a = a | b; }
constexpr bool has(Flag set, Flag f) { return (static_cast<std::uint32_t>(set) & static_cast<std::uint32_t>(f)) != 0; }

/// "ok", or names joined with '|'.
inline std::string to_string(Flag f) {
  if (f == Flag::none) return "ok";
  std::string s;
  auto add = [&](Flag bit, const char* name) {
    if (!has(f, bit)) return;
    if (!s.empty()) s += '|';
    s += name;
  };
  add(Flag::guard_band, "guard_band");
  add(Flag::paraxial, "paraxial");
  add(Flag::noise_floor, "noise_floor");
  add(Flag::unresolvable, "unresolvable");
  return s;
}

}  // namespace vprism

#endif  // VPRISM_FLAGS_HPP
