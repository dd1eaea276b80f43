#include <nlos/reconstruct/reconstruct.hpp>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include <nlos/core/constants.hpp>
#include <nlos/core/parallel.hpp>
#include <nlos/core/physics.hpp>

namespace nlos::reconstruct {

namespace {

using core::kSpeedOfLight;

struct ApertureGeom {
  std::vector<Vec3> points; // laser sample points, (i, j) order
  Vec3 centroid;
  Vec3 sensor;
  Vec3 plane_normal;
  Vec3 plane_origin;
};

ApertureGeom aperture_geom(const PhasorResponse &pr) {
  ApertureGeom geom;
  const RelayWall &wall = pr.wall;
  geom.points.reserve(wall.sample_count());
  for (std::uint32_t i = 0; i < wall.n_u(); ++i)
    for (std::uint32_t j = 0; j < wall.n_v(); ++j)
      geom.points.push_back(wall.sample_point(i, j));
  geom.centroid = wall.centroid();
  geom.sensor = pr.sensor;
  geom.plane_normal = wall.normal();
  geom.plane_origin = wall.origin();
  return geom;
}

VoxelSample backproject_impl(const PhasorResponse &pr, const ApertureGeom &geom, Vec3 x_v,
                             const PhasorPulse &pulse, const BackprojectOptions &opts) {
  const double dt = pr.bin_width;
  const double omega = pulse.omega();
  const double r_c = core::distance(x_v, geom.sensor);
  const std::uint32_t n_bins = pr.n_bins;
  const std::size_t n_lasers = geom.points.size();

  // e^{-i w dt}: rotates the upper neighbor back onto the lower one's phase
  const std::complex<double> rot_back = std::polar(1.0, -omega * dt);

  std::complex<double> sum(0.0, 0.0);
  std::uint32_t used = 0;
  const bool per_sample = opts.falloff == Falloff::per_sample;

  for (std::size_t p = 0; p < n_lasers; ++p) {
    const double r_p = core::distance(x_v, geom.points[p]);
    const double t_f = (r_p + r_c) / kSpeedOfLight;
    const double tau = (t_f - pr.t_start) / dt;
    if (tau < 0.0 || tau > double(n_bins - 1))
      continue;
    const std::uint32_t n0 = std::uint32_t(tau);
    const double frac = tau - double(n0);
    const std::complex<double> *slice = pr.data.data() + p * n_bins;
    const std::complex<double> c0 = slice[n0];
    const std::complex<double> c1 =
        n0 + 1 < n_bins ? slice[n0 + 1] : std::complex<double>(0.0, 0.0);
    // linear interpolation of the envelope with exact carrier rotation:
    // e^{i w frac dt} ((1-frac) c0 + frac e^{-i w dt} c1)
    const std::complex<double> rot = std::polar(1.0, omega * frac * dt);
    std::complex<double> value = rot * ((1.0 - frac) * c0 + frac * (rot_back * c1));
    if (per_sample)
      value /= r_p;
    sum += value;
    ++used;
  }

  const double gamma = 1.0 / core::distance(geom.centroid, x_v);
  const std::complex<double> camera = core::rsd_kernel(x_v, geom.sensor, pulse.wavenumber());
  const std::complex<double> amplitude = sum * gamma * camera / double(n_lasers);
  return {std::norm(amplitude), used};
}

void require_off_plane(const ApertureGeom &geom, Vec3 x_v) {
  if (std::abs(core::dot(geom.plane_normal, x_v - geom.plane_origin)) <= 1e-12)
    throw std::invalid_argument("backproject: voxel lies on the aperture plane");
}

} // namespace

VoxelSample backproject_voxel(const PhasorResponse &pr, Vec3 x_v, const PhasorPulse &pulse,
                              const BackprojectOptions &opts) {
  const ApertureGeom geom = aperture_geom(pr);
  require_off_plane(geom, x_v);
  return backproject_impl(pr, geom, x_v, pulse, opts);
}

ReconstructionVolume reconstruct_volume(const PhasorResponse &pr, const VolumeGrid &grid,
                                        const PhasorPulse &pulse, const BackprojectOptions &opts,
                                        ReconstructionStats *stats) {
  ReconstructionVolume vol(grid.min_corner, grid.max_corner, grid.n_x, grid.n_y, grid.n_z);
  vol.pulse_lambda = pulse.lambda();
  vol.pulse_cycles = pulse.cycles();

  const ApertureGeom geom = aperture_geom(pr);
  const std::size_t n_voxels = vol.voxel_count();
  std::atomic<std::size_t> flagged{0};

  core::parallel_for(n_voxels, [&](std::size_t begin, std::size_t end) {
    std::size_t local_flagged = 0;
    for (std::size_t v = begin; v < end; ++v) {
      const std::uint32_t ix = std::uint32_t(v % vol.n_x);
      const std::uint32_t iy = std::uint32_t((v / vol.n_x) % vol.n_y);
      const std::uint32_t iz = std::uint32_t(v / (std::size_t(vol.n_x) * vol.n_y));
      const Vec3 center = vol.voxel_center(ix, iy, iz);
      require_off_plane(geom, center);
      const VoxelSample sample = backproject_impl(pr, geom, center, pulse, opts);
      vol.data[v] = sample.intensity;
      if (sample.used_samples == 0)
        ++local_flagged;
    }
    flagged.fetch_add(local_flagged, std::memory_order_relaxed);
  });

  if (stats)
    stats->flagged_voxels = flagged.load();
  return vol;
}

ReconstructionVolume reconstruct_volume(const ImpulseResponse &h, const VolumeGrid &grid,
                                        const PhasorPulse &pulse, const BackprojectOptions &opts,
                                        ReconstructionStats *stats) {
  const PhasorResponse pr = convolve_pulse(h, pulse);
  return reconstruct_volume(pr, grid, pulse, opts, stats);
}

} // namespace nlos::reconstruct
