#pragma once
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlos/core/medium.hpp>
#include <nlos/core/vec3.hpp>

namespace nlos::core {

/// Beer-Lambert transmittance over a straight path of length d [m].
inline double transmittance(double d, const MediumParams &medium) {
  if (!(d >= 0.0))
    throw std::domain_error("transmittance: path length must be >= 0");
  return std::exp(-medium.mu_t() * d);
}

/// Henyey-Greenstein phase function, probability density per steradian.
inline double hg_phase(double cos_theta, double g) {
  if (!(std::abs(g) < 1.0))
    throw std::domain_error("hg_phase: |g| must be < 1");
  const double denom = 1.0 + g * g - 2.0 * g * cos_theta;
  return (1.0 / (4.0 * std::numbers::pi)) * (1.0 - g * g) / (denom * std::sqrt(denom));
}

/// Analytic HG CDF over cos(theta), F(c) = P[cos <= c]. Test oracle companion
/// to sample_hg; matches the inversion used there.
inline double hg_cdf(double c, double g) {
  if (g == 0.0) return 0.5 * (c + 1.0);
  const double s = 1.0 / std::sqrt(1.0 + g * g - 2.0 * g * c);
  return (1.0 - g * g) / (2.0 * g) * (s - 1.0 / (1.0 + g));
}

/// Inverse-CDF sample of the HG cosine. u in [0,1); u=0 maps to cos=+1.
inline double sample_hg_cos(double g, double u) {
  if (!(std::abs(g) < 1.0))
    throw std::domain_error("sample_hg: |g| must be < 1");
  if (g == 0.0)
    return 1.0 - 2.0 * u; // uniform sphere
  const double s = (1.0 - g * g) / (1.0 + g - 2.0 * g * u);
  return (1.0 + g * g - s * s) / (2.0 * g);
}

/// HG-distributed direction in the canonical frame (incoming axis = +z).
inline Vec3 sample_hg(double g, double u1, double u2) {
  const double cos_theta = sample_hg_cos(g, u1);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

/// HG-distributed direction around an arbitrary unit incoming axis.
inline Vec3 sample_hg_around(Vec3 axis, double g, double u1, double u2) {
  const Vec3 local = sample_hg(g, u1, u2);
  Vec3 t, b;
  orthonormal_basis(axis, t, b);
  return local.x * t + local.y * b + local.z * axis;
}

/// Free-path distance for a homogeneous medium, -ln(1-u)/mu_t.
/// mu_t == 0 means vacuum: returns +inf and the caller must branch.
inline double sample_free_path(double mu_t, double u) {
  if (!(mu_t >= 0.0))
    throw std::domain_error("sample_free_path: mu_t must be >= 0");
  if (mu_t == 0.0)
    return std::numeric_limits<double>::infinity();
  return -std::log1p(-u) / mu_t;
}

/// Rayleigh-Sommerfeld kernel e^{ikr}/r between two points. The aperture
/// attenuation factor gamma is applied once per propagation by the caller,
/// not here.
inline std::complex<double> rsd_kernel(Vec3 x_s, Vec3 x_d, double k) {
  const double r = distance(x_s, x_d);
  if (r == 0.0)
    throw std::domain_error("rsd_kernel: source and destination coincide");
  return std::polar(1.0 / r, k * r);
}

} // namespace nlos::core
