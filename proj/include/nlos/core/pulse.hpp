#pragma once
#include <numbers>
#include <stdexcept>

#include <nlos/core/constants.hpp>

namespace nlos::core {

/// Virtual illumination kernel: a monochromatic carrier under a Gaussian
/// envelope. The envelope's complete width is `cycles` wavelengths, so the
/// time-domain deviation is sigma = cycles * lambda / (6 c).
class PhasorPulse {
public:
  PhasorPulse(double lambda, double cycles = 4.0, double t0 = 0.0)
      : lambda_(lambda), cycles_(cycles), t0_(t0) {
    if (!(lambda > 0.0))
      throw std::invalid_argument("pulse: wavelength must be > 0");
    if (!(cycles > 0.0))
      throw std::invalid_argument("pulse: cycles must be > 0");
  }

  double lambda() const { return lambda_; }
  double cycles() const { return cycles_; }
  double t0() const { return t0_; }

  double wavenumber() const { return 2.0 * std::numbers::pi / lambda_; }
  double omega() const { return 2.0 * std::numbers::pi * kSpeedOfLight / lambda_; }
  double sigma() const { return cycles_ * lambda_ / (6.0 * kSpeedOfLight); }

private:
  double lambda_;
  double cycles_;
  double t0_;
};

} // namespace nlos::core
