#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <nlos/core/vec3.hpp>

namespace nlos::core {

/// Voxel grid of reconstructed intensities I(x_v) with world-space bounds.
/// Layout: x fastest, i.e. data[(iz*n_y + iy)*n_x + ix].
struct ReconstructionVolume {
  Vec3 min_corner;
  Vec3 max_corner;
  std::uint32_t n_x = 0, n_y = 0, n_z = 0;
  std::vector<double> data;

  // Reconstruction provenance, carried into the file header.
  double pulse_lambda = 0.0;
  double pulse_cycles = 0.0;
  bool filtered = false;

  ReconstructionVolume(Vec3 min_c, Vec3 max_c, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz)
      : min_corner(min_c), max_corner(max_c), n_x(nx), n_y(ny), n_z(nz),
        data(std::size_t(nx) * ny * nz, 0.0) {
    if (nx < 1 || ny < 1 || nz < 1)
      throw std::invalid_argument("volume: voxel counts must be >= 1");
    if (!(max_c.x > min_c.x && max_c.y > min_c.y && max_c.z > min_c.z))
      throw std::invalid_argument("volume: max corner must strictly dominate min corner");
  }

  std::size_t index(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
    return (std::size_t(iz) * n_y + iy) * n_x + ix;
  }

  double at(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
    return data[index(ix, iy, iz)];
  }

  Vec3 voxel_center(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
    const Vec3 extent = max_corner - min_corner;
    return min_corner + Vec3{(ix + 0.5) / n_x * extent.x, (iy + 0.5) / n_y * extent.y,
                             (iz + 0.5) / n_z * extent.z};
  }

  std::size_t voxel_count() const { return data.size(); }
};

} // namespace nlos::core
