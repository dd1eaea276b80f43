#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nlos/cli/pipeline.hpp>
#include <nlos/io/config.hpp>

namespace {

using nlos::cli::FilterArgs;
using nlos::cli::ProjectArgs;
using nlos::cli::ReconstructArgs;
using nlos::cli::SimulateArgs;

int run(int argc, char **argv) {
  CLI::App app{"Transient NLOS simulation and Phasor Fields reconstruction through "
               "scattering media"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  // ---- simulate ----
  SimulateArgs sim;
  CLI::App *c_sim = app.add_subcommand("simulate", "Render a scene impulse response");
  c_sim->add_option("--scene", sim.scene, "Scene preset: z_letter, shelf, point_target");
  c_sim->add_option("--mu-t", sim.mu_t, "Extinction coefficient [1/m]")
      ->check(CLI::NonNegativeNumber);
  c_sim->add_option("--albedo", sim.albedo, "Single-scattering albedo")->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--g", sim.g, "HG anisotropy in (-1, 1)")->check(CLI::Range(-1.0, 1.0));
  c_sim->add_option("--grid", sim.grid, "Laser grid points per wall axis")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--bins", sim.bins, "Histogram bins")->check(CLI::PositiveNumber);
  c_sim->add_option("--bin-width", sim.bin_width, "Bin width [s]")->check(CLI::PositiveNumber);
  c_sim->add_option("--paths", sim.paths, "Monte Carlo paths per laser point")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--max-bounces", sim.max_bounces, "Surface+medium event cap per path")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--seed", sim.seed, "RNG seed");
  c_sim->add_option("--mode", sim.mode, "montecarlo or ballistic");
  c_sim->add_option("--out", sim.out, "Output .nlosh path")->required();

  // ---- reconstruct ----
  ReconstructArgs rec;
  std::string rec_voxels = "32,32,32";
  std::string rec_bounds = "-0.6,-0.6,1.4:0.6,0.6,2.6";
  CLI::App *c_rec = app.add_subcommand("reconstruct", "Backproject an impulse response");
  c_rec->add_option("--in", rec.in, "Input .nlosh path")->required();
  c_rec->add_option("--voxels", rec_voxels, "Voxel counts nx,ny,nz");
  c_rec->add_option("--bounds", rec_bounds, "Volume bounds x0,y0,z0:x1,y1,z1");
  c_rec->add_option("--lambda-factor", rec.lambda_factor, "lambda = factor * grid pitch")
      ->check(CLI::PositiveNumber);
  c_rec->add_option("--lambda-scale", rec.lambda_scale, "Extra wavelength multiplier")
      ->check(CLI::PositiveNumber);
  c_rec->add_option("--cycles", rec.cycles, "Pulse envelope width in wavelengths")
      ->check(CLI::PositiveNumber);
  c_rec->add_option("--falloff", rec.falloff, "gamma-only or per-sample");
  c_rec->add_option("--out", rec.out, "Output .nlosv path")->required();

  // ---- filter ----
  FilterArgs flt;
  std::string flt_center = "0,0,0";
  CLI::App *c_flt = app.add_subcommand("filter", "Apply extinction compensation to a volume");
  c_flt->add_option("--in", flt.in, "Input .nlosv path")->required();
  c_flt->add_option("--mu-t", flt.mu_t, "Extinction coefficient [1/m]")
      ->check(CLI::NonNegativeNumber)
      ->required();
  c_flt->add_option("--albedo", flt.albedo, "Single-scattering albedo")
      ->check(CLI::Range(0.0, 1.0))
      ->required();
  c_flt->add_option("--relay-center", flt_center, "Relay wall center x,y,z");
  c_flt->add_option("--out", flt.out, "Output .nlosv path")->required();

  // ---- project ----
  ProjectArgs prj;
  double prj_mu_t = 0.0, prj_albedo = 0.0, prj_g = 0.0;
  CLI::App *c_prj = app.add_subcommand("project", "Maximum-intensity projection to PGM");
  c_prj->add_option("--in", prj.in, "Input .nlosv path")->required();
  c_prj->add_option("--view", prj.view, "front, lateral or top");
  CLI::Option *o_mu = c_prj->add_option("--mu-t", prj_mu_t, "Annotate PGM with mu_t");
  CLI::Option *o_al = c_prj->add_option("--albedo", prj_albedo, "Annotate PGM with albedo");
  CLI::Option *o_g = c_prj->add_option("--g", prj_g, "Annotate PGM with g");
  c_prj->add_option("--out", prj.out, "Output .pgm path")->required();

  // ---- sweep ----
  std::string sweep_config;
  std::string sweep_out_dir;
  bool sweep_dry_run = false;
  std::uint32_t sweep_jobs = 0;
  CLI::App *c_swp = app.add_subcommand("sweep", "Run the media-parameter sweep grids");
  c_swp->add_option("--config", sweep_config, "Run configuration file")->required();
  c_swp->add_option("--out-dir", sweep_out_dir, "Output directory")->required();
  c_swp->add_flag("--dry-run", sweep_dry_run, "Print the plan without executing");
  c_swp->add_option("--jobs", sweep_jobs, "Concurrent sweep cells")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (c_sim->parsed()) {
    const nlos::simulate::RenderStats stats = nlos::cli::run_simulate(sim);
    std::printf("total_energy=%.9g overflow_fraction=%.9g mean_volume_events=%.9g\n",
                stats.total_energy, stats.overflow_fraction(), stats.mean_volume_events());
  } else if (c_rec->parsed()) {
    nlos::io::parse_voxels(rec_voxels, rec.voxels_x, rec.voxels_y, rec.voxels_z);
    nlos::io::parse_bounds(rec_bounds, rec.bounds_min, rec.bounds_max);
    const nlos::cli::ReconstructInfo info = nlos::cli::run_reconstruct(rec);
    std::printf("lambda=%.9g flagged_voxels=%zu\n", info.lambda, info.flagged_voxels);
  } else if (c_flt->parsed()) {
    std::vector<double> c;
    {
      std::stringstream ss(flt_center);
      std::string item;
      while (std::getline(ss, item, ','))
        c.push_back(std::stod(item));
    }
    if (c.size() != 3)
      throw std::invalid_argument("relay-center: expected x,y,z");
    flt.relay_center = {c[0], c[1], c[2]};
    nlos::cli::run_filter(flt);
    std::printf("filtered=%s\n", flt.out.c_str());
  } else if (c_prj->parsed()) {
    if (*o_mu) prj.mu_t = prj_mu_t;
    if (*o_al) prj.albedo = prj_albedo;
    if (*o_g) prj.g = prj_g;
    nlos::cli::run_project(prj);
    std::printf("projected=%s\n", prj.out.c_str());
  } else if (c_swp->parsed()) {
    nlos::io::RunConfig cfg = nlos::io::load_config(sweep_config);
    if (sweep_jobs >= 1)
      cfg.jobs = sweep_jobs;
    nlos::cli::run_sweep(cfg, sweep_out_dir, sweep_dry_run, std::cout);
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception &e) {
    std::string msg = e.what();
    for (char &ch : msg)
      if (ch == '\n')
        ch = ' ';
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 1;
  }
}
