#pragma once
#include <cstdint>
#include <string>

#include <nlos/core/vec3.hpp>

namespace nlos::io {

/// Full run parameters with desk-scale defaults. Keys mirror the CLI flag
/// names with '-' replaced by '_'; see README for the table.
struct RunConfig {
  std::string scene = "z_letter";
  double mu_t = 1.0;
  double albedo = 0.5;
  double g = 0.0;
  std::uint32_t grid = 32;
  std::uint32_t bins = 1024;
  double bin_width = 16e-12;
  std::uint64_t paths = 100000;
  std::uint32_t max_bounces = 8;
  std::uint64_t seed = 7;
  std::string mode = "montecarlo";
  std::uint32_t voxels_x = 32, voxels_y = 32, voxels_z = 32;
  core::Vec3 bounds_min{-0.6, -0.6, 1.4};
  core::Vec3 bounds_max{0.6, 0.6, 2.6};
  double lambda_factor = 4.0;
  double lambda_scale = 1.0;
  double cycles = 4.0;
  std::string falloff = "gamma-only";
  std::string sweep = "all"; // density | anisotropy | wavelength | all
  std::uint32_t jobs = 1;

  void validate() const;
};

/// Parses `key = value` lines with '#' comments. Unknown keys are an error
/// that lists the valid keys; an empty file yields all defaults.
RunConfig load_config(const std::string &path);
RunConfig parse_config(const std::string &text, const std::string &origin = "<config>");

/// "nx,ny,nz" triple.
void parse_voxels(const std::string &text, std::uint32_t &nx, std::uint32_t &ny,
                  std::uint32_t &nz);
/// "x0,y0,z0:x1,y1,z1" box.
void parse_bounds(const std::string &text, core::Vec3 &min_c, core::Vec3 &max_c);

} // namespace nlos::io
