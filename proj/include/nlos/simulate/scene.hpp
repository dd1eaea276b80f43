#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlos/core/medium.hpp>
#include <nlos/core/relay_wall.hpp>
#include <nlos/core/vec3.hpp>

namespace nlos::simulate {

using core::MediumParams;
using core::RelayWall;
using core::Vec3;

/// Lambertian parallelogram: corners p0, p0+e1, p0+e1+e2, p0+e2.
struct Quad {
  Vec3 p0;
  Vec3 e1;
  Vec3 e2;
  double albedo = 0.8;

  Vec3 normal() const { return core::normalized(core::cross(e1, e2)); }
  double area() const { return core::norm(core::cross(e1, e2)); }
};

/// Hidden scene behind the diffuser. The wall plane is the boundary of the
/// medium; all primitives must lie strictly on the medium side, and the
/// sensor must sit on the wall rectangle.
struct SceneDescription {
  RelayWall wall;
  std::vector<Quad> primitives;
  MediumParams medium;
  Vec3 sensor;
  std::string name;

  SceneDescription(RelayWall wall_, std::vector<Quad> primitives_, MediumParams medium_,
                   Vec3 sensor_, std::string name_ = "")
      : wall(wall_), primitives(std::move(primitives_)), medium(medium_), sensor(sensor_),
        name(std::move(name_)) {
    validate();
  }

  /// Unit normal of the wall plane oriented toward the medium side.
  Vec3 medium_normal() const { return wall.normal(); }

  void validate() const;
};

enum class RenderMode { montecarlo, ballistic };

struct RenderConfig {
  std::uint32_t n_bins = 1024;
  double bin_width = 16e-12; // seconds
  std::uint64_t paths_per_laser = 100000;
  std::uint32_t max_bounces = 8; // surface + medium events combined
  std::uint64_t seed = 7;
  RenderMode mode = RenderMode::montecarlo;

  void validate() const {
    if (n_bins < 1)
      throw std::invalid_argument("render config: n_bins must be >= 1");
    if (!(bin_width > 0.0))
      throw std::invalid_argument("render config: bin_width must be > 0");
    if (paths_per_laser < 1)
      throw std::invalid_argument("render config: paths_per_laser must be >= 1");
    if (max_bounces < 1)
      throw std::invalid_argument("render config: max_bounces must be >= 1");
  }
};

} // namespace nlos::simulate
