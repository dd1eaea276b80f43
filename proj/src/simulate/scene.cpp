#include <nlos/simulate/scene.hpp>

namespace nlos::simulate {

void SceneDescription::validate() const {
  const Vec3 n = medium_normal();
  const Vec3 w0 = wall.origin();

  for (std::size_t q = 0; q < primitives.size(); ++q) {
    const Quad &quad = primitives[q];
    if (!(quad.area() > 0.0))
      throw std::invalid_argument("scene: primitive " + std::to_string(q) + " has zero area");
    const Vec3 corners[4] = {quad.p0, quad.p0 + quad.e1, quad.p0 + quad.e1 + quad.e2,
                             quad.p0 + quad.e2};
    for (const Vec3 &c : corners) {
      if (!(core::dot(n, c - w0) > 1e-9))
        throw std::invalid_argument("scene: primitive " + std::to_string(q) +
                                    " does not lie strictly on the medium side of the wall");
    }
  }

  // sensor must sit on the wall rectangle
  const Vec3 d = sensor - w0;
  if (std::abs(core::dot(n, d)) > 1e-9)
    throw std::invalid_argument("scene: sensor is off the wall plane");
  const Vec3 u = wall.u_axis(), v = wall.v_axis();
  const double su = core::dot(d, u) / core::dot(u, u);
  const double sv = core::dot(d, v) / core::dot(v, v);
  if (su < -1e-9 || su > 1.0 + 1e-9 || sv < -1e-9 || sv > 1.0 + 1e-9)
    throw std::invalid_argument("scene: sensor is outside the wall rectangle");
}

} // namespace nlos::simulate
