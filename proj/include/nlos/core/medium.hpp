#pragma once
#include <stdexcept>

namespace nlos::core {

/// Bulk optical parameters of a homogeneous scattering medium.
///
/// mu_t is the extinction coefficient [1/m], albedo the single-scattering
/// albedo mu_s/mu_t, and g the Henyey-Greenstein anisotropy. The scattering
/// and absorption coefficients are derived so that mu_s + mu_a == mu_t holds
/// exactly in floating point (the larger of the two is computed by
/// subtraction, which is exact when the operands are within a factor of two).
class MediumParams {
public:
  MediumParams() = default;

  MediumParams(double mu_t, double albedo, double g) : mu_t_(mu_t), albedo_(albedo), g_(g) {
    if (!(mu_t >= 0.0))
      throw std::invalid_argument("medium: mu_t must be >= 0");
    if (!(albedo >= 0.0 && albedo <= 1.0))
      throw std::invalid_argument("medium: albedo must be in [0, 1]");
    if (!(g > -1.0 && g < 1.0))
      throw std::invalid_argument("medium: g must be in (-1, 1)");
    if (albedo >= 0.5) {
      mu_s_ = albedo * mu_t;
      mu_a_ = mu_t - mu_s_;
    } else {
      mu_a_ = (1.0 - albedo) * mu_t;
      mu_s_ = mu_t - mu_a_;
    }
  }

  static MediumParams vacuum() { return MediumParams(0.0, 0.0, 0.0); }

  double mu_t() const { return mu_t_; }
  double albedo() const { return albedo_; }
  double g() const { return g_; }
  double mu_s() const { return mu_s_; }
  double mu_a() const { return mu_a_; }

  bool is_vacuum() const { return mu_t_ == 0.0; }

private:
  double mu_t_ = 0.0;
  double albedo_ = 0.0;
  double g_ = 0.0;
  double mu_s_ = 0.0;
  double mu_a_ = 0.0;
};

} // namespace nlos::core
