#pragma once
#include <cstdint>

#include <nlos/simulate/scene.hpp>

namespace nlos::simulate {

/// Built-in scenes. The diffuser is a 3.2 x 3.2 m square centered at the
/// origin with normal +z; the sensor sits at the wall center.
///
///   z_letter     planar Z glyph (1.0 x 1.0 m bounding box, three bars) on
///                the plane z = 2.0 m
///   shelf        3 x 2.2 x 3 m room whose front wall is the diffuser, with
///                a multi-plank shelf whose back panel is at z = 1.8 m
///   point_target single 0.02 m quad at z = 2.0 m for focal-spot tests
///
/// grid_n sets the laser sample counts per wall axis.
SceneDescription preset_scene(const std::string &name, MediumParams medium,
                              std::uint32_t grid_n = 32);

} // namespace nlos::simulate
