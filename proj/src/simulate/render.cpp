#include <nlos/simulate/render.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlos/core/constants.hpp>
#include <nlos/core/parallel.hpp>
#include <nlos/core/physics.hpp>
#include <nlos/core/rng.hpp>

namespace nlos::simulate {

namespace {

using core::kSpeedOfLight;
using core::Rng;
using core::Vec3;

constexpr double kRayEps = 1e-9;        // m
constexpr std::uint32_t kRrStart = 4;   // events before Russian roulette
constexpr double kRrFloor = 0.05;       // survival probability clamp

constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadGeom {
  Vec3 p0, e1, e2;
  Vec3 n; // unit
  double albedo;
  // Gram matrix terms for the parallelogram parameter solve
  double d11, d12, d22, inv_det;
};

struct Hit {
  double t = kInf;
  int quad = -1;
};

class Tracer {
public:
  explicit Tracer(const SceneDescription &scene)
      : wall_origin_(scene.wall.origin()), wall_n_(scene.medium_normal()), sensor_(scene.sensor) {
    quads_.reserve(scene.primitives.size());
    for (const Quad &q : scene.primitives) {
      QuadGeom g;
      g.p0 = q.p0;
      g.e1 = q.e1;
      g.e2 = q.e2;
      g.n = q.normal();
      g.albedo = q.albedo;
      g.d11 = core::dot(q.e1, q.e1);
      g.d12 = core::dot(q.e1, q.e2);
      g.d22 = core::dot(q.e2, q.e2);
      g.inv_det = 1.0 / (g.d11 * g.d22 - g.d12 * g.d12);
      quads_.push_back(g);
    }
  }

  Hit nearest(Vec3 pos, Vec3 dir, double t_max = kInf) const {
    Hit best;
    best.t = t_max;
    for (std::size_t q = 0; q < quads_.size(); ++q) {
      const QuadGeom &g = quads_[q];
      const double denom = core::dot(g.n, dir);
      if (std::abs(denom) < 1e-13)
        continue;
      const double t = core::dot(g.n, g.p0 - pos) / denom;
      if (t <= kRayEps || t >= best.t)
        continue;
      const Vec3 v = pos + t * dir - g.p0;
      const double a1 = core::dot(v, g.e1);
      const double a2 = core::dot(v, g.e2);
      const double s = (a1 * g.d22 - a2 * g.d12) * g.inv_det;
      if (s < 0.0 || s > 1.0)
        continue;
      const double u = (a2 * g.d11 - a1 * g.d12) * g.inv_det;
      if (u < 0.0 || u > 1.0)
        continue;
      best.t = t;
      best.quad = int(q);
    }
    if (best.quad < 0)
      best.t = kInf;
    return best;
  }

  bool visible(Vec3 pos, Vec3 target) const {
    const double dist = core::distance(pos, target);
    const Vec3 dir = (target - pos) / dist;
    return nearest(pos, dir, dist - 1e-7).quad < 0;
  }

  /// Distance along the ray to the wall plane when heading out of the
  /// medium; +inf otherwise.
  double wall_exit(Vec3 pos, Vec3 dir) const {
    const double facing = core::dot(wall_n_, dir);
    if (facing >= 0.0)
      return kInf;
    const double h = core::dot(wall_n_, pos - wall_origin_);
    return h <= 0.0 ? 0.0 : -h / facing;
  }

  const QuadGeom &quad(int idx) const { return quads_[std::size_t(idx)]; }
  Vec3 wall_normal() const { return wall_n_; }
  Vec3 sensor() const { return sensor_; }

private:
  std::vector<QuadGeom> quads_;
  Vec3 wall_origin_;
  Vec3 wall_n_;
  Vec3 sensor_;
};

Vec3 cosine_hemisphere(Vec3 n, double u1, double u2) {
  const double cos_theta = std::sqrt(u1);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  Vec3 t, b;
  core::orthonormal_basis(n, t, b);
  return (sin_theta * std::cos(phi)) * t + (sin_theta * std::sin(phi)) * b + cos_theta * n;
}

struct LaserAccumulator {
  std::vector<double> hist;
  RenderStats stats;

  explicit LaserAccumulator(std::uint32_t n_bins) : hist(n_bins, 0.0) {}

  /// Bins a contribution by in-medium path length; bin_length = c * bin_width.
  void deposit(double path_length, double amount, double bin_length) {
    const double b = std::floor(path_length / bin_length);
    if (b < double(hist.size())) {
      hist[std::size_t(b)] += amount;
      stats.total_energy += amount;
    } else {
      stats.overflow_energy += amount;
      stats.overflow_count += 1;
    }
  }
};

void trace_path(const Tracer &tracer, const SceneDescription &scene, const RenderConfig &cfg,
                Vec3 x_p, Rng &rng, LaserAccumulator &acc) {
  const Vec3 n_w = tracer.wall_normal();
  const Vec3 x_c = tracer.sensor();
  const MediumParams &medium = scene.medium;
  const double mu_t = medium.mu_t();

  Vec3 pos = x_p;
  Vec3 dir = cosine_hemisphere(n_w, rng.uniform(), rng.uniform());
  double throughput = 1.0;
  double travelled = 0.0;
  double path_contrib = 0.0;
  std::uint32_t events = 0;

  while (true) {
    const Hit hit = tracer.nearest(pos, dir);
    const double s_wall = tracer.wall_exit(pos, dir);
    const double s_exit = std::min(hit.t, s_wall);
    const double d_free = mu_t > 0.0 ? core::sample_free_path(mu_t, rng.uniform()) : kInf;

    if (d_free < s_exit) {
      // medium scatter event
      pos = pos + d_free * dir;
      travelled += d_free;
      events += 1;
      acc.stats.volume_event_sum += 1.0;
      throughput *= medium.albedo();
      if (throughput == 0.0)
        break;

      const Vec3 to_sensor = x_c - pos;
      const double r2 = core::norm(to_sensor);
      if (r2 > kRayEps) {
        const Vec3 wo = to_sensor / r2;
        const double cos_c = core::dot(n_w, pos - x_c) / r2;
        if (cos_c > 0.0 && tracer.visible(pos, x_c)) {
          const double phase = core::hg_phase(core::dot(dir, wo), medium.g());
          const double contrib = throughput * phase * std::exp(-mu_t * r2) * cos_c / (r2 * r2);
          acc.deposit(travelled + r2, contrib, cfg.bin_width * kSpeedOfLight);
          path_contrib += contrib;
        }
      }
      dir = core::sample_hg_around(dir, medium.g(), rng.uniform(), rng.uniform());
    } else if (hit.quad >= 0 && hit.t < s_wall) {
      // surface scatter event
      const QuadGeom &g = tracer.quad(hit.quad);
      pos = pos + hit.t * dir;
      travelled += hit.t;
      events += 1;
      const Vec3 nf = core::dot(g.n, dir) < 0.0 ? g.n : -g.n;

      const Vec3 to_sensor = x_c - pos;
      const double r2 = core::norm(to_sensor);
      if (r2 > kRayEps) {
        const Vec3 wo = to_sensor / r2;
        const double cos_out = core::dot(nf, wo);
        const double cos_c = core::dot(n_w, pos - x_c) / r2;
        if (cos_out > 0.0 && cos_c > 0.0 && tracer.visible(pos, x_c)) {
          const double brdf = g.albedo / std::numbers::pi;
          const double contrib =
              throughput * brdf * cos_out * std::exp(-mu_t * r2) * cos_c / (r2 * r2);
          acc.deposit(travelled + r2, contrib, cfg.bin_width * kSpeedOfLight);
          path_contrib += contrib;
        }
      }
      throughput *= g.albedo;
      if (throughput == 0.0)
        break;
      dir = cosine_hemisphere(nf, rng.uniform(), rng.uniform());
    } else {
      break; // exits through the diffuser plane or escapes the scene
    }

    if (events >= cfg.max_bounces)
      break;
    if (events >= kRrStart) {
      const double p = std::clamp(throughput, kRrFloor, 1.0);
      if (rng.uniform() >= p)
        break;
      throughput /= p;
    }
  }

  acc.stats.path_contrib_sum += path_contrib;
  acc.stats.path_contrib_sq_sum += path_contrib * path_contrib;
  acc.stats.path_count += 1;
}

void merge_stats(RenderStats &into, const RenderStats &from) {
  into.total_energy += from.total_energy;
  into.overflow_energy += from.overflow_energy;
  into.overflow_count += from.overflow_count;
  into.path_count += from.path_count;
  into.volume_event_sum += from.volume_event_sum;
  into.path_contrib_sum += from.path_contrib_sum;
  into.path_contrib_sq_sum += from.path_contrib_sq_sum;
}

void scale_stats(RenderStats &stats, double s) {
  stats.total_energy *= s;
  stats.overflow_energy *= s;
  stats.path_contrib_sum *= s;
  stats.path_contrib_sq_sum *= s * s;
}

} // namespace

RenderOutput render_impulse(const SceneDescription &scene, const RenderConfig &cfg) {
  cfg.validate();
  scene.validate();
  if (cfg.mode == RenderMode::ballistic)
    return render_ballistic(scene, cfg);

  const Tracer tracer(scene);
  const std::uint32_t n_u = scene.wall.n_u();
  const std::uint32_t n_v = scene.wall.n_v();
  const std::size_t n_lasers = std::size_t(n_u) * n_v;
  const double inv_paths = 1.0 / double(cfg.paths_per_laser);

  ImpulseResponse out(scene.wall, scene.sensor, cfg.n_bins, cfg.bin_width);
  out.medium = scene.medium;
  out.scene_name = scene.name;
  std::vector<RenderStats> laser_stats(n_lasers);

  core::parallel_for(n_lasers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t laser = begin; laser < end; ++laser) {
      const std::uint32_t i = std::uint32_t(laser / n_v);
      const std::uint32_t j = std::uint32_t(laser % n_v);
      const Vec3 x_p = scene.wall.sample_point(i, j);

      LaserAccumulator acc(cfg.n_bins);
      for (std::uint64_t p = 0; p < cfg.paths_per_laser; ++p) {
        Rng rng = Rng::for_path(cfg.seed, laser, p);
        trace_path(tracer, scene, cfg, x_p, rng, acc);
      }

      float *slice = out.data.data() + laser * cfg.n_bins;
      for (std::uint32_t b = 0; b < cfg.n_bins; ++b)
        slice[b] = float(acc.hist[b] * inv_paths);
      scale_stats(acc.stats, inv_paths);
      laser_stats[laser] = acc.stats;
    }
  });

  RenderOutput result{std::move(out), RenderStats{}};
  for (const RenderStats &s : laser_stats)
    merge_stats(result.stats, s);
  return result;
}

RenderOutput render_ballistic(const SceneDescription &scene, const RenderConfig &cfg) {
  cfg.validate();
  scene.validate();

  const std::uint32_t n_u = scene.wall.n_u();
  const std::uint32_t n_v = scene.wall.n_v();
  const std::size_t n_lasers = std::size_t(n_u) * n_v;
  const Vec3 n_w = scene.medium_normal();
  const Vec3 x_c = scene.sensor;
  const double mu_t = scene.medium.mu_t();
  const double patch_side = kSpeedOfLight * cfg.bin_width;

  // tessellate every primitive into patches of area <= (c * bin_width)^2
  struct Patch {
    Vec3 center;
    Vec3 n;
    double weight; // albedo/pi * area
  };
  std::vector<Patch> patches;
  for (const Quad &q : scene.primitives) {
    const std::uint32_t n1 = std::uint32_t(std::max(1.0, std::ceil(core::norm(q.e1) / patch_side)));
    const std::uint32_t n2 = std::uint32_t(std::max(1.0, std::ceil(core::norm(q.e2) / patch_side)));
    const double area = q.area() / (double(n1) * n2);
    const Vec3 n = q.normal();
    for (std::uint32_t a = 0; a < n1; ++a)
      for (std::uint32_t b = 0; b < n2; ++b)
        patches.push_back({q.p0 + ((a + 0.5) / n1) * q.e1 + ((b + 0.5) / n2) * q.e2, n,
                           q.albedo / std::numbers::pi * area});
  }

  ImpulseResponse out(scene.wall, scene.sensor, cfg.n_bins, cfg.bin_width);
  out.medium = scene.medium;
  out.scene_name = scene.name;
  std::vector<RenderStats> laser_stats(n_lasers);

  core::parallel_for(n_lasers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t laser = begin; laser < end; ++laser) {
      const std::uint32_t i = std::uint32_t(laser / n_v);
      const std::uint32_t j = std::uint32_t(laser % n_v);
      const Vec3 x_p = scene.wall.sample_point(i, j);

      LaserAccumulator acc(cfg.n_bins);
      for (const Patch &patch : patches) {
        const Vec3 v1 = x_p - patch.center;
        const double r1 = core::norm(v1);
        const Vec3 v2 = x_c - patch.center;
        const double r2 = core::norm(v2);
        if (r1 <= kRayEps || r2 <= kRayEps)
          continue;
        const Vec3 nf = core::dot(patch.n, v1) > 0.0 ? patch.n : -patch.n;
        const double cos_in = core::dot(nf, v1) / r1;
        const double cos_out = core::dot(nf, v2) / r2;
        if (cos_out <= 0.0)
          continue;
        const double cos_p = core::dot(n_w, patch.center - x_p) / r1;
        const double cos_c = core::dot(n_w, patch.center - x_c) / r2;
        if (cos_p <= 0.0 || cos_c <= 0.0)
          continue;
        const double contrib = (cos_p / std::numbers::pi) * (cos_in / (r1 * r1)) *
                               std::exp(-mu_t * (r1 + r2)) * patch.weight * cos_out * cos_c /
                               (r2 * r2);
        acc.deposit(r1 + r2, contrib, cfg.bin_width * kSpeedOfLight);
      }

      float *slice = out.data.data() + laser * cfg.n_bins;
      for (std::uint32_t b = 0; b < cfg.n_bins; ++b)
        slice[b] = float(acc.hist[b]);
      laser_stats[laser] = acc.stats;
    }
  });

  RenderOutput result{std::move(out), RenderStats{}};
  for (const RenderStats &s : laser_stats)
    merge_stats(result.stats, s);
  return result;
}

} // namespace nlos::simulate
