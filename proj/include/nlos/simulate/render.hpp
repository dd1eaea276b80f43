#pragma once
#include <cstdint>

#include <nlos/core/impulse_response.hpp>
#include <nlos/simulate/scene.hpp>

namespace nlos::simulate {

using core::ImpulseResponse;

struct RenderStats {
  double total_energy = 0.0;    // sum of all histogram bins
  double overflow_energy = 0.0; // contributions past the last bin, dropped
  std::uint64_t overflow_count = 0;
  std::uint64_t path_count = 0;
  double volume_event_sum = 0.0;   // total medium scatter events over all paths
  double path_contrib_sum = 0.0;   // per-path total contribution, first moment
  double path_contrib_sq_sum = 0.0; // and second moment, for MC error bars

  double overflow_fraction() const {
    const double denom = total_energy + overflow_energy;
    return denom > 0.0 ? overflow_energy / denom : 0.0;
  }
  double mean_volume_events() const {
    return path_count > 0 ? volume_event_sum / double(path_count) : 0.0;
  }
};

struct RenderOutput {
  ImpulseResponse response;
  RenderStats stats;
};

/// Monte Carlo transient render of the scene impulse response. Paths start
/// at each laser point as cosine-weighted emission into the medium, scatter
/// on surfaces (Lambertian) and in the medium (Henyey-Greenstein), and
/// connect to the sensor by next-event estimation at every event. Time is
/// the in-medium path length over c, with t = 0 at emission. Bit-identical
/// for a fixed (scene, cfg, seed) regardless of thread count.
RenderOutput render_impulse(const SceneDescription &scene, const RenderConfig &cfg);

/// Deterministic three-segment transport x_p -> surface patch -> x_c with
/// analytic transmittance; no in-scattering, no interreflection, no
/// occlusion. Primitives are tessellated into patches of area at most
/// (c * bin_width)^2. Serves as a closed-form oracle for the MC renderer.
RenderOutput render_ballistic(const SceneDescription &scene, const RenderConfig &cfg);

} // namespace nlos::simulate
