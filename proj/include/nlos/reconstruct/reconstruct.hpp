#pragma once
#include <cstdint>
#include <optional>

#include <nlos/core/impulse_response.hpp>
#include <nlos/core/pulse.hpp>
#include <nlos/core/volume.hpp>
#include <nlos/reconstruct/phasor_response.hpp>

namespace nlos::reconstruct {

using core::ImpulseResponse;
using core::PhasorPulse;
using core::ReconstructionVolume;

/// Illumination pulse for a capture grid: lambda = lambda_factor * Delta_c
/// unless overridden, envelope width `cycles` wavelengths, zero delay.
PhasorPulse make_pulse(const RelayWall &wall, double lambda_factor = 4.0, double cycles = 4.0,
                       std::optional<double> lambda_override = std::nullopt);

/// Convolves every laser-point histogram with the complex pulse kernel
/// e^{i w t} exp(-(t-t0)^2 / (2 sigma^2)), sampled over +-3 sigma.
/// Frequency-domain with linear (zero-padded) semantics; the voxel-dependent
/// focusing delays are deferred to backprojection via the shift theorem.
PhasorResponse convolve_pulse(const ImpulseResponse &h, const PhasorPulse &pulse);

/// Aperture distance falloff inside the backprojection sum. The default
/// applies only the aperture-average gamma factor; per_sample additionally
/// divides each term by its emitter distance r_p.
enum class Falloff { gamma_only, per_sample };

struct BackprojectOptions {
  Falloff falloff = Falloff::gamma_only;
};

struct VoxelSample {
  double intensity = 0.0;        // |A|^2, >= 0
  std::uint32_t used_samples = 0; // laser points whose focal time was in span
};

/// Focuses the virtual time-gated camera on x_v: sums the phasor response
/// over the aperture at the focal time (r_p + r_c)/c with sub-bin phase
/// rotation, applies the camera-side RSD kernel and gamma, normalizes by
/// aperture sample count, and returns the squared magnitude.
VoxelSample backproject_voxel(const PhasorResponse &pr, Vec3 x_v, const PhasorPulse &pulse,
                              const BackprojectOptions &opts = {});

struct VolumeGrid {
  Vec3 min_corner;
  Vec3 max_corner;
  std::uint32_t n_x = 0, n_y = 0, n_z = 0;
};

struct ReconstructionStats {
  std::size_t flagged_voxels = 0; // voxels with no in-span aperture sample
};

/// Full pipeline: convolve once, then backproject every voxel center.
/// Voxels are independent; the result does not depend on iteration order.
ReconstructionVolume reconstruct_volume(const ImpulseResponse &h, const VolumeGrid &grid,
                                        const PhasorPulse &pulse,
                                        const BackprojectOptions &opts = {},
                                        ReconstructionStats *stats = nullptr);

ReconstructionVolume reconstruct_volume(const PhasorResponse &pr, const VolumeGrid &grid,
                                        const PhasorPulse &pulse,
                                        const BackprojectOptions &opts = {},
                                        ReconstructionStats *stats = nullptr);

} // namespace nlos::reconstruct
