#include <nlos/simulate/presets.hpp>

namespace nlos::simulate {

namespace {

constexpr double kWallSize = 3.2;    // m, square diffuser (z_letter, point_target)
constexpr double kZDepth = 2.0;      // m, letter plane distance
constexpr double kZSize = 1.0;       // m, glyph bounding box
constexpr double kZBar = 0.22;       // m, bar thickness
constexpr double kRoomFace = 3.0;    // m, room front face (the diffuser, shelf scene)
constexpr double kRoomDepth = 2.2;   // m
constexpr double kShelfDepth = 1.8;  // m, shelf back panel distance
constexpr double kTargetSide = 0.02; // m, point target quad
constexpr double kPlaneEps = 1e-6;   // m, keeps adjoining quads strictly inside the medium

RelayWall square_wall(double size, std::uint32_t grid_n) {
  return RelayWall({-size / 2, -size / 2, 0.0}, {size, 0.0, 0.0}, {0.0, size, 0.0}, grid_n,
                   grid_n);
}

std::vector<Quad> z_letter_quads() {
  const double h = kZSize / 2;
  const double y_top = h - kZBar;  // inner edge of the top bar
  const double y_bot = -h + kZBar; // inner edge of the bottom bar
  std::vector<Quad> quads;
  // top bar
  quads.push_back({{-h, y_top, kZDepth}, {kZSize, 0, 0}, {0, kZBar, 0}, 0.8});
  // bottom bar
  quads.push_back({{-h, -h, kZDepth}, {kZSize, 0, 0}, {0, kZBar, 0}, 0.8});
  // diagonal joining bottom-left to top-right
  quads.push_back({{-h, y_bot, kZDepth}, {kZBar, 0, 0}, {kZSize - kZBar, y_top - y_bot, 0}, 0.8});
  return quads;
}

std::vector<Quad> shelf_quads() {
  const double hf = kRoomFace / 2;
  const double z0 = kPlaneEps;
  const double zd = kRoomDepth - kPlaneEps;
  const double wall_albedo = 0.5;
  std::vector<Quad> quads;
  // room box; the missing face at z = 0 is the diffuser
  quads.push_back({{-hf, -hf, kRoomDepth}, {kRoomFace, 0, 0}, {0, kRoomFace, 0}, wall_albedo});
  quads.push_back({{-hf, -hf, z0}, {kRoomFace, 0, 0}, {0, 0, zd}, wall_albedo}); // floor
  quads.push_back({{-hf, hf, z0}, {kRoomFace, 0, 0}, {0, 0, zd}, wall_albedo});  // ceiling
  quads.push_back({{-hf, -hf, z0}, {0, kRoomFace, 0}, {0, 0, zd}, wall_albedo}); // left
  quads.push_back({{hf, -hf, z0}, {0, kRoomFace, 0}, {0, 0, zd}, wall_albedo});  // right
  // shelf unit: back panel, two sides, four planks
  const double sw = 1.6, sh = 1.6, sd = 0.4;
  const double shelf_albedo = 0.8;
  quads.push_back({{-sw / 2, -sh / 2, kShelfDepth}, {sw, 0, 0}, {0, sh, 0}, shelf_albedo});
  quads.push_back({{-sw / 2, -sh / 2, kShelfDepth - sd}, {0, sh, 0}, {0, 0, sd}, shelf_albedo});
  quads.push_back({{sw / 2, -sh / 2, kShelfDepth - sd}, {0, sh, 0}, {0, 0, sd}, shelf_albedo});
  for (int p = 0; p < 4; ++p) {
    const double y = -sh / 2 + p * sh / 3.0;
    quads.push_back({{-sw / 2, y, kShelfDepth - sd}, {sw, 0, 0}, {0, 0, sd}, shelf_albedo});
  }
  return quads;
}

} // namespace

SceneDescription preset_scene(const std::string &name, MediumParams medium,
                              std::uint32_t grid_n) {
  if (name == "z_letter") {
    const RelayWall wall = square_wall(kWallSize, grid_n);
    return SceneDescription(wall, z_letter_quads(), medium, wall.centroid(), name);
  }
  if (name == "shelf") {
    const RelayWall wall = square_wall(kRoomFace, grid_n);
    return SceneDescription(wall, shelf_quads(), medium, wall.centroid(), name);
  }
  if (name == "point_target") {
    const RelayWall wall = square_wall(kWallSize, grid_n);
    const double s = kTargetSide;
    std::vector<Quad> quads{{{-s / 2, -s / 2, kZDepth}, {s, 0, 0}, {0, s, 0}, 0.8}};
    return SceneDescription(wall, std::move(quads), medium, wall.centroid(), name);
  }
  throw std::invalid_argument("unknown scene preset '" + name +
                              "' (available: z_letter, shelf, point_target)");
}

} // namespace nlos::simulate
