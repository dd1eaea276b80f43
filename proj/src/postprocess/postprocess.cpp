#include <nlos/postprocess/postprocess.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlos::postprocess {

double extinction_scale(double d, const MediumParams &medium) {
  const double albedo = medium.albedo();
  return (1.0 - albedo * std::exp(-d * albedo)) / std::exp(-d * medium.mu_t());
}

ReconstructionVolume extinction_filter(const ReconstructionVolume &vol,
                                       const MediumParams &medium, Vec3 relay_center) {
  ReconstructionVolume out = vol;
  for (std::uint32_t iz = 0; iz < vol.n_z; ++iz)
    for (std::uint32_t iy = 0; iy < vol.n_y; ++iy)
      for (std::uint32_t ix = 0; ix < vol.n_x; ++ix) {
        const double d = core::distance(vol.voxel_center(ix, iy, iz), relay_center);
        out.data[vol.index(ix, iy, iz)] *= extinction_scale(d, medium);
      }
  out.filtered = true;
  return out;
}

View parse_view(const std::string &name) {
  if (name == "front") return View::front;
  if (name == "lateral") return View::lateral;
  if (name == "top") return View::top;
  throw std::invalid_argument("unknown view '" + name + "' (available: front, lateral, top)");
}

const char *view_name(View view) {
  switch (view) {
  case View::front: return "front";
  case View::lateral: return "lateral";
  case View::top: return "top";
  }
  return "?";
}

Image max_intensity_projection(const ReconstructionVolume &vol, View view) {
  Image img;
  switch (view) {
  case View::front:
    img.width = vol.n_x;
    img.height = vol.n_y;
    break;
  case View::lateral:
    img.width = vol.n_z;
    img.height = vol.n_y;
    break;
  case View::top:
    img.width = vol.n_x;
    img.height = vol.n_z;
    break;
  }
  img.pixels.assign(std::size_t(img.width) * img.height, 0.0);

  for (std::uint32_t iz = 0; iz < vol.n_z; ++iz)
    for (std::uint32_t iy = 0; iy < vol.n_y; ++iy)
      for (std::uint32_t ix = 0; ix < vol.n_x; ++ix) {
        const double v = vol.at(ix, iy, iz);
        double *px = nullptr;
        switch (view) {
        case View::front: px = &img.at(iy, ix); break;
        case View::lateral: px = &img.at(iy, iz); break;
        case View::top: px = &img.at(iz, ix); break;
        }
        *px = std::max(*px, v);
      }
  return img;
}

std::vector<std::uint8_t> normalize_image(const Image &img) {
  std::vector<std::uint8_t> out(img.pixels.size(), 0);
  double max_v = 0.0;
  for (double v : img.pixels)
    max_v = std::max(max_v, v);
  if (max_v <= 0.0)
    return out;
  for (std::size_t p = 0; p < img.pixels.size(); ++p) {
    const double scaled = img.pixels[p] / max_v * 255.0;
    out[p] = std::uint8_t(std::min(255.0, std::floor(scaled + 0.5)));
  }
  return out;
}

} // namespace nlos::postprocess
