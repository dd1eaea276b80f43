#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlos/core/medium.hpp>
#include <nlos/core/relay_wall.hpp>
#include <nlos/core/vec3.hpp>

namespace nlos::core {

/// Time-binned transport H(x_p -> x_c, t) from each relay-wall laser point
/// to the single sensor point. Payload is stored as f32 (matching the
/// on-disk format; the simulator accumulates in double and quantizes once).
/// Layout: bin fastest, i.e. data[(i*n_v + j)*n_bins + b].
struct ImpulseResponse {
  RelayWall wall;
  Vec3 sensor;
  std::uint32_t n_bins = 0;
  double bin_width = 0.0; // seconds
  double t_start = 0.0;   // seconds
  std::vector<float> data;

  // Capture provenance, carried into the file header.
  MediumParams medium;
  std::string scene_name;

  ImpulseResponse(RelayWall wall_, Vec3 sensor_, std::uint32_t n_bins_, double bin_width_,
                  double t_start_ = 0.0)
      : wall(wall_), sensor(sensor_), n_bins(n_bins_), bin_width(bin_width_), t_start(t_start_),
        data(std::size_t(wall_.sample_count()) * n_bins_, 0.0f) {
    if (n_bins < 1)
      throw std::invalid_argument("impulse response: n_bins must be >= 1");
    if (!(bin_width > 0.0))
      throw std::invalid_argument("impulse response: bin_width must be > 0");
  }

  std::size_t index(std::uint32_t i, std::uint32_t j, std::uint32_t b) const {
    return (std::size_t(i) * wall.n_v() + j) * n_bins + b;
  }

  float at(std::uint32_t i, std::uint32_t j, std::uint32_t b) const { return data[index(i, j, b)]; }

  double total_energy() const {
    double sum = 0.0;
    for (float v : data) sum += v;
    return sum;
  }
};

} // namespace nlos::core
