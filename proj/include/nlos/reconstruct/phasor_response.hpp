#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include <nlos/core/relay_wall.hpp>
#include <nlos/core/vec3.hpp>

namespace nlos::reconstruct {

using core::RelayWall;
using core::Vec3;

/// Complex per-laser-point response after convolving H with the phasor
/// pulse: the precomputed form of the virtual sensor signal, before the
/// aperture sum. Produced only by convolve_pulse; n_bins/t_start describe
/// the full linear-convolution support.
struct PhasorResponse {
  RelayWall wall;
  Vec3 sensor;
  std::uint32_t n_bins = 0;
  double bin_width = 0.0;
  double t_start = 0.0;
  std::vector<std::complex<double>> data; // (i*n_v + j)*n_bins + b

  PhasorResponse(RelayWall wall_, Vec3 sensor_, std::uint32_t n_bins_, double bin_width_,
                 double t_start_)
      : wall(wall_), sensor(sensor_), n_bins(n_bins_), bin_width(bin_width_), t_start(t_start_),
        data(std::size_t(wall_.sample_count()) * n_bins_) {}

  std::size_t index(std::uint32_t i, std::uint32_t j, std::uint32_t b) const {
    return (std::size_t(i) * wall.n_v() + j) * n_bins + b;
  }

  std::complex<double> at(std::uint32_t i, std::uint32_t j, std::uint32_t b) const {
    return data[index(i, j, b)];
  }
};

} // namespace nlos::reconstruct
