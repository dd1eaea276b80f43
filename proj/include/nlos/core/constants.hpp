#pragma once

namespace nlos::core {

/// Speed of light in vacuum [m/s]. The virtual phasor wave propagates at
/// this speed regardless of the medium.
inline constexpr double kSpeedOfLight = 299792458.0;

} // namespace nlos::core
