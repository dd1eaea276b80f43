#pragma once
#include <cstdint>
#include <stdexcept>

#include <nlos/core/vec3.hpp>

namespace nlos::core {

/// Planar rectangle of virtual emitter sample points on the diffuser.
///
/// Sample (i, j) sits at origin + ((i+0.5)/n_u) u_axis + ((j+0.5)/n_v) v_axis.
/// The grid must be uniform: the pitch |u_axis|/n_u must equal |v_axis|/n_v.
class RelayWall {
public:
  RelayWall(Vec3 origin, Vec3 u_axis, Vec3 v_axis, std::uint32_t n_u, std::uint32_t n_v)
      : origin_(origin), u_axis_(u_axis), v_axis_(v_axis), n_u_(n_u), n_v_(n_v) {
    if (n_u < 1 || n_v < 1)
      throw std::invalid_argument("relay wall: sample counts must be >= 1");
    const double pu = norm(u_axis_) / n_u_;
    const double pv = norm(v_axis_) / n_v_;
    if (!(pu > 0.0) || !(pv > 0.0))
      throw std::invalid_argument("relay wall: axes must be non-degenerate");
    if (std::abs(pu - pv) > 1e-9 * pu)
      throw std::invalid_argument("relay wall: grid pitch must be uniform in u and v");
  }

  Vec3 origin() const { return origin_; }
  Vec3 u_axis() const { return u_axis_; }
  Vec3 v_axis() const { return v_axis_; }
  std::uint32_t n_u() const { return n_u_; }
  std::uint32_t n_v() const { return n_v_; }

  /// Sample pitch Delta_c [m].
  double pitch() const { return norm(u_axis_) / n_u_; }

  Vec3 sample_point(std::uint32_t i, std::uint32_t j) const {
    return origin_ + ((i + 0.5) / n_u_) * u_axis_ + ((j + 0.5) / n_v_) * v_axis_;
  }

  Vec3 centroid() const { return origin_ + 0.5 * u_axis_ + 0.5 * v_axis_; }

  /// Unit plane normal (orientation fixed by u x v).
  Vec3 normal() const { return normalized(cross(u_axis_, v_axis_)); }

  std::uint64_t sample_count() const { return std::uint64_t(n_u_) * n_v_; }

private:
  Vec3 origin_, u_axis_, v_axis_;
  std::uint32_t n_u_, n_v_;
};

} // namespace nlos::core
