#include <nlos/cli/pipeline.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>
#include <vector>

#include <nlos/io/formats.hpp>
#include <nlos/postprocess/pgm.hpp>
#include <nlos/postprocess/postprocess.hpp>
#include <nlos/reconstruct/reconstruct.hpp>
#include <nlos/simulate/presets.hpp>

namespace nlos::cli {

namespace {

using core::MediumParams;
using core::ReconstructionVolume;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

simulate::RenderMode parse_mode(const std::string &mode) {
  if (mode == "montecarlo")
    return simulate::RenderMode::montecarlo;
  if (mode == "ballistic")
    return simulate::RenderMode::ballistic;
  throw std::invalid_argument("unknown mode '" + mode + "' (available: montecarlo, ballistic)");
}

reconstruct::Falloff parse_falloff(const std::string &falloff) {
  if (falloff == "gamma-only")
    return reconstruct::Falloff::gamma_only;
  if (falloff == "per-sample")
    return reconstruct::Falloff::per_sample;
  throw std::invalid_argument("unknown falloff '" + falloff +
                              "' (available: gamma-only, per-sample)");
}

} // namespace

simulate::RenderStats run_simulate(const SimulateArgs &args) {
  const MediumParams medium(args.mu_t, args.albedo, args.g);
  const simulate::SceneDescription scene = simulate::preset_scene(args.scene, medium, args.grid);
  simulate::RenderConfig cfg;
  cfg.n_bins = args.bins;
  cfg.bin_width = args.bin_width;
  cfg.paths_per_laser = args.paths;
  cfg.max_bounces = args.max_bounces;
  cfg.seed = args.seed;
  cfg.mode = parse_mode(args.mode);
  simulate::RenderOutput result = simulate::render_impulse(scene, cfg);
  io::write_h(args.out, result.response);
  return result.stats;
}

ReconstructInfo run_reconstruct(const ReconstructArgs &args) {
  const core::ImpulseResponse h = io::read_h(args.in);
  const core::PhasorPulse pulse =
      reconstruct::make_pulse(h.wall, args.lambda_factor * args.lambda_scale, args.cycles);
  reconstruct::VolumeGrid grid{args.bounds_min, args.bounds_max, args.voxels_x, args.voxels_y,
                               args.voxels_z};
  reconstruct::BackprojectOptions opts;
  opts.falloff = parse_falloff(args.falloff);
  reconstruct::ReconstructionStats stats;
  const ReconstructionVolume vol = reconstruct::reconstruct_volume(h, grid, pulse, opts, &stats);
  io::write_vol(args.out, vol);
  return {pulse.lambda(), stats.flagged_voxels};
}

void run_filter(const FilterArgs &args) {
  const ReconstructionVolume vol = io::read_vol(args.in);
  if (vol.filtered)
    throw std::invalid_argument("volume '" + args.in +
                                "' is already extinction-filtered; refusing to filter twice");
  const MediumParams medium(args.mu_t, args.albedo, 0.0);
  const ReconstructionVolume out = postprocess::extinction_filter(vol, medium, args.relay_center);
  io::write_vol(args.out, out);
}

void run_project(const ProjectArgs &args) {
  const ReconstructionVolume vol = io::read_vol(args.in);
  const postprocess::View view = postprocess::parse_view(args.view);
  const postprocess::Image img = postprocess::max_intensity_projection(vol, view);
  std::optional<MediumParams> medium;
  if (args.mu_t || args.albedo || args.g)
    medium = MediumParams(args.mu_t.value_or(0.0), args.albedo.value_or(0.0), args.g.value_or(0.0));
  postprocess::write_pgm(args.out, img, view, vol.pulse_lambda, medium);
}

namespace {

struct SweepCell {
  std::string name;   // family/label
  std::string file;   // output PGM name
  double mu_t;
  double albedo;
  double g;
  double lambda_scale;
};

std::vector<SweepCell> plan_cells(const io::RunConfig &cfg) {
  static const double kDensityMuT[] = {0.5, 1.0, 2.0};
  static const double kAlbedos[] = {0.15, 0.33, 0.5, 0.67, 0.83};
  static const double kAnisotropies[] = {0.7, 0.0, -0.7};
  static const double kLambdaScales[] = {1.0, 2.0, 3.0};

  std::vector<SweepCell> cells;
  const bool all = cfg.sweep == "all";
  if (all || cfg.sweep == "density") {
    for (double mu_t : kDensityMuT)
      for (double albedo : kAlbedos)
        cells.push_back({"density/mu_t=" + num(mu_t) + ",albedo=" + num(albedo),
                         "density_mut" + num(mu_t) + "_alb" + num(albedo) + ".pgm", mu_t, albedo,
                         0.0, 1.0});
  }
  if (all || cfg.sweep == "anisotropy") {
    for (double g : kAnisotropies)
      for (double albedo : kAlbedos)
        cells.push_back({"anisotropy/g=" + num(g) + ",albedo=" + num(albedo),
                         "anisotropy_g" + num(g) + "_alb" + num(albedo) + ".pgm", 1.0, albedo, g,
                         1.0});
  }
  if (all || cfg.sweep == "wavelength") {
    for (double scale : kLambdaScales)
      cells.push_back({"wavelength/lambda_scale=" + num(scale),
                       "wavelength_x" + num(scale) + ".pgm", 1.0, 0.83, 0.0, scale});
  }
  return cells;
}

std::string run_cell(const io::RunConfig &cfg, const SweepCell &cell, std::uint64_t seed,
                     const std::filesystem::path &out_dir) {
  const MediumParams medium(cell.mu_t, cell.albedo, cell.g);
  const simulate::SceneDescription scene = simulate::preset_scene(cfg.scene, medium, cfg.grid);

  simulate::RenderConfig render_cfg;
  render_cfg.n_bins = cfg.bins;
  render_cfg.bin_width = cfg.bin_width;
  render_cfg.paths_per_laser = cfg.paths;
  render_cfg.max_bounces = cfg.max_bounces;
  render_cfg.seed = seed;
  render_cfg.mode = parse_mode(cfg.mode);
  const simulate::RenderOutput sim = simulate::render_impulse(scene, render_cfg);

  const core::PhasorPulse pulse = reconstruct::make_pulse(
      scene.wall, cfg.lambda_factor * cfg.lambda_scale * cell.lambda_scale, cfg.cycles);
  reconstruct::VolumeGrid grid{cfg.bounds_min, cfg.bounds_max, cfg.voxels_x, cfg.voxels_y,
                               cfg.voxels_z};
  reconstruct::BackprojectOptions opts;
  opts.falloff = parse_falloff(cfg.falloff);
  const ReconstructionVolume vol = reconstruct::reconstruct_volume(sim.response, grid, pulse, opts);

  const ReconstructionVolume filtered =
      postprocess::extinction_filter(vol, medium, scene.wall.centroid());
  const postprocess::Image img =
      postprocess::max_intensity_projection(filtered, postprocess::View::front);
  postprocess::write_pgm((out_dir / cell.file).string(), img, postprocess::View::front,
                         pulse.lambda(), medium);

  double peak = 0.0, peak_filtered = 0.0;
  for (double v : vol.data)
    peak = std::max(peak, v);
  for (double v : filtered.data)
    peak_filtered = std::max(peak_filtered, v);

  return "cell=" + cell.name + " scene=" + cfg.scene + " mu_t=" + num(cell.mu_t) +
         " albedo=" + num(cell.albedo) + " g=" + num(cell.g) + " lambda=" + num(pulse.lambda()) +
         " seed=" + std::to_string(seed) + " peak=" + num(peak) +
         " peak_filtered=" + num(peak_filtered) + " file=" + cell.file;
}

} // namespace

void run_sweep(const io::RunConfig &cfg, const std::string &out_dir, bool dry_run,
               std::ostream &log) {
  const std::vector<SweepCell> cells = plan_cells(cfg);

  if (dry_run) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      log << "plan: cell=" << cells[c].name << " seed=" << (cfg.seed ^ std::uint64_t(c))
          << " file=" << cells[c].file << "\n";
    log << "plan: cells=" << cells.size() << " out_dir=" << out_dir << "\n";
    return;
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  std::vector<std::string> manifest(cells.size());
  const std::uint32_t jobs = std::max(1u, cfg.jobs);

  if (jobs == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      manifest[c] = run_cell(cfg, cells[c], cfg.seed ^ std::uint64_t(c), dir);
      log << manifest[c] << "\n";
    }
  } else {
    // batches of `jobs` concurrent cells, manifest kept in cell order
    std::size_t next = 0;
    while (next < cells.size()) {
      const std::size_t batch_end = std::min(cells.size(), next + jobs);
      std::vector<std::future<std::string>> batch;
      for (std::size_t c = next; c < batch_end; ++c)
        batch.push_back(std::async(std::launch::async, [&, c]() {
          return run_cell(cfg, cells[c], cfg.seed ^ std::uint64_t(c), dir);
        }));
      for (std::size_t c = next; c < batch_end; ++c) {
        manifest[c] = batch[c - next].get();
        log << manifest[c] << "\n";
      }
      next = batch_end;
    }
  }

  std::ofstream mf(dir / "manifest.txt", std::ios::trunc);
  if (!mf)
    throw io::IoError("cannot write manifest in '" + out_dir + "'");
  for (const std::string &line : manifest)
    mf << line << "\n";
}

} // namespace nlos::cli
