#pragma once
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlos/core/vec3.hpp>
#include <nlos/io/config.hpp>
#include <nlos/simulate/render.hpp>

namespace nlos::cli {

struct SimulateArgs {
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
  std::string out;
};

/// Renders the preset scene and writes the .nlosh file.
simulate::RenderStats run_simulate(const SimulateArgs &args);

struct ReconstructArgs {
  std::string in;
  std::string out;
  std::uint32_t voxels_x = 32, voxels_y = 32, voxels_z = 32;
  core::Vec3 bounds_min{-0.6, -0.6, 1.4};
  core::Vec3 bounds_max{0.6, 0.6, 2.6};
  double lambda_factor = 4.0;
  double lambda_scale = 1.0;
  double cycles = 4.0;
  std::string falloff = "gamma-only";
};

struct ReconstructInfo {
  double lambda = 0.0;
  std::size_t flagged_voxels = 0;
};

/// Reads .nlosh, reconstructs, writes .nlosv.
ReconstructInfo run_reconstruct(const ReconstructArgs &args);

struct FilterArgs {
  std::string in;
  std::string out;
  double mu_t = 0.0;
  double albedo = 0.0;
  core::Vec3 relay_center{0.0, 0.0, 0.0};
};

/// Applies the extinction compensation and sets the filtered flag.
void run_filter(const FilterArgs &args);

struct ProjectArgs {
  std::string in;
  std::string out;
  std::string view = "front";
  // optional annotation for the PGM comment line
  std::optional<double> mu_t;
  std::optional<double> albedo;
  std::optional<double> g;
};

void run_project(const ProjectArgs &args);

/// Runs the configured sweep families into out_dir: one front-view PGM per
/// cell plus manifest.txt with parameters and peak-intensity metrics.
/// Per-cell seeds are seed XOR cell-index. dry_run only prints the plan.
void run_sweep(const io::RunConfig &cfg, const std::string &out_dir, bool dry_run,
               std::ostream &log);

} // namespace nlos::cli
