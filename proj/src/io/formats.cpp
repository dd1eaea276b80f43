#include <nlos/io/formats.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace nlos::io {

namespace {

constexpr char kMagicH[6] = {'N', 'L', 'O', 'S', 'H', '1'};
constexpr char kMagicV[6] = {'N', 'L', 'O', 'S', 'V', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b)
      bytes_.push_back(char((v >> (8 * b)) & 0xff));
  }
  void f64(double v) { raw64(std::bit_cast<std::uint64_t>(v)); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(const char *data, std::size_t n) { bytes_.append(data, n); }
  void str(const std::string &s) {
    u32(std::uint32_t(s.size()));
    bytes_.append(s);
  }
  std::string take() { return std::move(bytes_); }

private:
  void raw64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b)
      bytes_.push_back(char((v >> (8 * b)) & 0xff));
  }
  std::string bytes_;
};

class Reader {
public:
  Reader(const std::string &bytes, std::string name) : bytes_(bytes), name_(std::move(name)) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b)
      v |= std::uint32_t(std::uint8_t(bytes_[pos_ + b])) << (8 * b);
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b)
      v |= std::uint64_t(std::uint8_t(bytes_[pos_ + b])) << (8 * b);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::uint8_t u8() {
    need(1);
    return std::uint8_t(bytes_[pos_++]);
  }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  void magic(const char expected[6]) {
    need(6);
    if (std::memcmp(bytes_.data() + pos_, expected, 6) != 0)
      throw FormatError(name_ + ": bad magic, expected \"" + std::string(expected, 6) + "\"");
    pos_ += 6;
  }
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size())
      throw TruncationError(name_ + ": file truncated");
  }
  void expect_end() const {
    if (pos_ != bytes_.size())
      throw CountMismatchError(name_ + ": trailing bytes beyond declared payload");
  }

private:
  const std::string &bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_vec(Writer &w, core::Vec3 v) {
  w.f64(v.x);
  w.f64(v.y);
  w.f64(v.z);
}

core::Vec3 read_vec(Reader &r) {
  core::Vec3 v;
  v.x = r.f64();
  v.y = r.f64();
  v.z = r.f64();
  return v;
}

} // namespace

void atomic_write(const std::string &path, const std::string &bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open '" + tmp + "' for writing");
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out)
      throw IoError("short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string serialize_h(const ImpulseResponse &h) {
  const std::size_t expected = std::size_t(h.wall.sample_count()) * h.n_bins;
  if (h.data.size() != expected)
    throw CountMismatchError("impulse response payload length does not match counts");
  Writer w;
  w.raw(kMagicH, 6);
  w.u32(kVersion);
  write_vec(w, h.wall.origin());
  write_vec(w, h.wall.u_axis());
  write_vec(w, h.wall.v_axis());
  w.u32(h.wall.n_u());
  w.u32(h.wall.n_v());
  write_vec(w, h.sensor);
  w.u32(h.n_bins);
  w.f64(h.bin_width);
  w.f64(h.t_start);
  w.f64(h.medium.mu_t());
  w.f64(h.medium.albedo());
  w.f64(h.medium.g());
  w.str(h.scene_name);
  for (float v : h.data)
    w.f32(v);
  return w.take();
}

void write_h(const std::string &path, const ImpulseResponse &h) {
  atomic_write(path, serialize_h(h));
}

ImpulseResponse read_h(const std::string &path) {
  const std::string bytes = slurp(path);
  Reader r(bytes, path);
  r.magic(kMagicH);
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(path + ": unsupported version " + std::to_string(version));
  const core::Vec3 origin = read_vec(r);
  const core::Vec3 u_axis = read_vec(r);
  const core::Vec3 v_axis = read_vec(r);
  const std::uint32_t n_u = r.u32();
  const std::uint32_t n_v = r.u32();
  const core::Vec3 sensor = read_vec(r);
  const std::uint32_t n_bins = r.u32();
  const double bin_width = r.f64();
  const double t_start = r.f64();
  const double mu_t = r.f64();
  const double albedo = r.f64();
  const double g = r.f64();
  const std::string scene_name = r.str();

  if (n_u < 1 || n_v < 1 || n_bins < 1)
    throw CountMismatchError(path + ": header counts must be positive");

  try {
    ImpulseResponse h(core::RelayWall(origin, u_axis, v_axis, n_u, n_v), sensor, n_bins, bin_width,
                      t_start);
    h.medium = core::MediumParams(mu_t, albedo, g);
    h.scene_name = scene_name;
    for (float &v : h.data)
      v = r.f32();
    r.expect_end();
    return h;
  } catch (const std::invalid_argument &e) {
    throw FormatError(path + ": invalid header values (" + e.what() + ")");
  }
}

std::string serialize_vol(const ReconstructionVolume &vol) {
  const std::size_t expected = std::size_t(vol.n_x) * vol.n_y * vol.n_z;
  if (vol.data.size() != expected)
    throw CountMismatchError("volume payload length does not match counts");
  Writer w;
  w.raw(kMagicV, 6);
  w.u32(kVersion);
  write_vec(w, vol.min_corner);
  write_vec(w, vol.max_corner);
  w.u32(vol.n_x);
  w.u32(vol.n_y);
  w.u32(vol.n_z);
  w.f64(vol.pulse_lambda);
  w.f64(vol.pulse_cycles);
  w.raw(vol.filtered ? "\x01" : "\x00", 1);
  for (double v : vol.data)
    w.f32(float(v));
  return w.take();
}

void write_vol(const std::string &path, const ReconstructionVolume &vol) {
  atomic_write(path, serialize_vol(vol));
}

ReconstructionVolume read_vol(const std::string &path) {
  const std::string bytes = slurp(path);
  Reader r(bytes, path);
  r.magic(kMagicV);
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(path + ": unsupported version " + std::to_string(version));
  const core::Vec3 min_c = read_vec(r);
  const core::Vec3 max_c = read_vec(r);
  const std::uint32_t n_x = r.u32();
  const std::uint32_t n_y = r.u32();
  const std::uint32_t n_z = r.u32();
  const double lambda = r.f64();
  const double cycles = r.f64();
  const std::uint8_t flag = r.u8();

  if (n_x < 1 || n_y < 1 || n_z < 1)
    throw CountMismatchError(path + ": header counts must be positive");

  try {
    ReconstructionVolume vol(min_c, max_c, n_x, n_y, n_z);
    vol.pulse_lambda = lambda;
    vol.pulse_cycles = cycles;
    vol.filtered = flag != 0;
    for (double &v : vol.data)
      v = r.f32();
    r.expect_end();
    return vol;
  } catch (const std::invalid_argument &e) {
    throw FormatError(path + ": invalid header values (" + e.what() + ")");
  }
}

} // namespace nlos::io
