#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <nlos/core/medium.hpp>
#include <nlos/core/vec3.hpp>
#include <nlos/core/volume.hpp>

namespace nlos::postprocess {

using core::MediumParams;
using core::ReconstructionVolume;
using core::Vec3;

/// Per-voxel extinction compensation scale,
/// K(d) = (1 - albedo e^{-d albedo}) / e^{-d mu_t},
/// with d the distance from the relay-wall center to the voxel.
double extinction_scale(double d, const MediumParams &medium);

/// Applies K(x_v) to every voxel; the input is not mutated. Marks the
/// result as filtered.
ReconstructionVolume extinction_filter(const ReconstructionVolume &vol,
                                       const MediumParams &medium, Vec3 relay_center);

struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<double> pixels; // row-major, data[row*width + col]

  double &at(std::uint32_t row, std::uint32_t col) { return pixels[std::size_t(row) * width + col]; }
  double at(std::uint32_t row, std::uint32_t col) const {
    return pixels[std::size_t(row) * width + col];
  }
};

enum class View { front, lateral, top };

View parse_view(const std::string &name);
const char *view_name(View view);

/// Per-pixel maximum along the collapsed axis:
///   front:   collapse z; image (rows, cols) = (y, x)
///   lateral: collapse x; image (rows, cols) = (y, z)
///   top:     collapse y; image (rows, cols) = (z, x)
Image max_intensity_projection(const ReconstructionVolume &vol, View view);

/// Linear map [0, max] -> [0, 255] with round-half-up; all-zero input maps
/// to all-zero output.
std::vector<std::uint8_t> normalize_image(const Image &img);

} // namespace nlos::postprocess
