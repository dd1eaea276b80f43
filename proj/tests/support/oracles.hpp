#pragma once
#include <cmath>
#include <complex>
#include <vector>

#include <nlos/core/constants.hpp>
#include <nlos/core/impulse_response.hpp>
#include <nlos/core/pulse.hpp>
#include <nlos/reconstruct/reconstruct.hpp>

namespace nlos::testing {

/// O(n m) time-domain convolution, the reference for the FFT path.
inline std::vector<std::complex<double>>
naive_convolve(const float *h, std::size_t n, const std::vector<std::complex<double>> &kernel) {
  const std::size_t m = kernel.size();
  std::vector<std::complex<double>> out(n + m - 1, std::complex<double>(0.0, 0.0));
  for (std::size_t b = 0; b < n; ++b) {
    const double hv = double(h[b]);
    if (hv == 0.0)
      continue;
    for (std::size_t kb = 0; kb < m; ++kb)
      out[b + kb] += hv * kernel[kb];
  }
  return out;
}

/// Pulse kernel samples over +-ceil(3 sigma / dt) bins, matching the
/// implementation's sampling convention (re-derived here, not shared).
inline std::vector<std::complex<double>> sampled_kernel(const core::PhasorPulse &pulse,
                                                        double dt) {
  const double sigma = pulse.sigma();
  const std::size_t m2 = std::size_t(std::ceil(3.0 * sigma / dt));
  std::vector<std::complex<double>> kernel(2 * m2 + 1);
  for (std::size_t kb = 0; kb < kernel.size(); ++kb) {
    const double t = pulse.t0() + (double(kb) - double(m2)) * dt;
    kernel[kb] = std::polar(std::exp(-(t - pulse.t0()) * (t - pulse.t0()) /
                                     (2.0 * sigma * sigma)),
                            pulse.omega() * t);
  }
  return kernel;
}

/// Backprojection with the focusing delays written into per-laser kernels:
/// evaluates sum_b h[b] g(t_f - t_b) exactly for every laser point, with the
/// same truncation window, then applies the same aperture factors. The
/// deferred pipeline approximates this via convolve-once + sub-bin lookup.
inline double explicit_delay_intensity(const core::ImpulseResponse &h, core::Vec3 x_v,
                                       const core::PhasorPulse &pulse,
                                       nlos::reconstruct::Falloff falloff) {
  using core::kSpeedOfLight;
  const double dt = h.bin_width;
  const double sigma = pulse.sigma();
  const double omega = pulse.omega();
  const double t0 = pulse.t0();
  const double window = std::ceil(3.0 * sigma / dt) * dt;

  const core::RelayWall &wall = h.wall;
  const double r_c = core::distance(x_v, h.sensor);
  std::complex<double> sum(0.0, 0.0);
  for (std::uint32_t i = 0; i < wall.n_u(); ++i)
    for (std::uint32_t j = 0; j < wall.n_v(); ++j) {
      const core::Vec3 x_p = wall.sample_point(i, j);
      const double t_f = (core::distance(x_v, x_p) + r_c) / kSpeedOfLight;
      std::complex<double> value(0.0, 0.0);
      for (std::uint32_t b = 0; b < h.n_bins; ++b) {
        const float hv = h.at(i, j, b);
        if (hv == 0.0f)
          continue;
        const double t = t_f - (h.t_start + double(b) * dt); // kernel argument
        if (std::abs(t - t0) > window)
          continue;
        value += double(hv) *
                 std::polar(std::exp(-(t - t0) * (t - t0) / (2.0 * sigma * sigma)), omega * t);
      }
      if (falloff == nlos::reconstruct::Falloff::per_sample)
        value /= core::distance(x_v, x_p);
      sum += value;
    }

  const double gamma = 1.0 / core::distance(wall.centroid(), x_v);
  const std::complex<double> camera = std::polar(1.0 / r_c, pulse.wavenumber() * r_c);
  const std::complex<double> amplitude =
      sum * gamma * camera / double(wall.sample_count());
  return std::norm(amplitude);
}

} // namespace nlos::testing
