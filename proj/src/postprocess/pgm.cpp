#include <nlos/postprocess/pgm.hpp>

#include <cstdio>

#include <nlos/io/formats.hpp>

namespace nlos::postprocess {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

} // namespace

void write_pgm(const std::string &path, const Image &img, View view, double lambda,
               std::optional<MediumParams> medium) {
  const std::vector<std::uint8_t> bytes = normalize_image(img);
  std::string out;
  out += "P5\n";
  out += "# view=" + std::string(view_name(view)) + " lambda=" + num(lambda);
  if (medium)
    out += " mu_t=" + num(medium->mu_t()) + " albedo=" + num(medium->albedo()) +
           " g=" + num(medium->g());
  out += "\n";
  out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char *>(bytes.data()), bytes.size());
  io::atomic_write(path, out);
}

} // namespace nlos::postprocess
