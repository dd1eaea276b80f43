#include <nlos/io/config.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nlos::io {

namespace {

const std::vector<std::string> kValidKeys = {
    "scene",      "mu_t",          "albedo",       "g",      "grid",   "bins",
    "bin_width",  "paths",         "max_bounces",  "seed",   "mode",   "voxels",
    "bounds",     "lambda_factor", "lambda_scale", "cycles", "falloff", "sweep",
    "jobs"};

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string &origin, int line, const std::string &msg) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string &origin, int line, const std::string &key,
                 const std::string &value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception &) {
    fail(origin, line, "key '" + key + "': cannot parse number '" + value + "'");
  }
}

std::uint64_t to_u64(const std::string &origin, int line, const std::string &key,
                     const std::string &value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size())
    fail(origin, line, "key '" + key + "': cannot parse integer '" + value + "'");
  return v;
}

std::vector<double> split_numbers(const std::string &text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    out.push_back(std::stod(trim(item), &used));
    if (used != trim(item).size())
      throw std::invalid_argument("trailing characters in '" + item + "'");
  }
  return out;
}

} // namespace

void parse_voxels(const std::string &text, std::uint32_t &nx, std::uint32_t &ny,
                  std::uint32_t &nz) {
  std::vector<double> v;
  try {
    v = split_numbers(text, ',');
  } catch (const std::exception &) {
    throw std::invalid_argument("voxels: expected 'nx,ny,nz', got '" + text + "'");
  }
  if (v.size() != 3 || v[0] < 1 || v[1] < 1 || v[2] < 1 || v[0] != std::floor(v[0]) ||
      v[1] != std::floor(v[1]) || v[2] != std::floor(v[2]))
    throw std::invalid_argument("voxels: expected three positive integers, got '" + text + "'");
  nx = std::uint32_t(v[0]);
  ny = std::uint32_t(v[1]);
  nz = std::uint32_t(v[2]);
}

void parse_bounds(const std::string &text, core::Vec3 &min_c, core::Vec3 &max_c) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bounds: expected 'x0,y0,z0:x1,y1,z1', got '" + text + "'");
  std::vector<double> lo, hi;
  try {
    lo = split_numbers(text.substr(0, colon), ',');
    hi = split_numbers(text.substr(colon + 1), ',');
  } catch (const std::exception &) {
    throw std::invalid_argument("bounds: cannot parse numbers in '" + text + "'");
  }
  if (lo.size() != 3 || hi.size() != 3)
    throw std::invalid_argument("bounds: expected two comma triples in '" + text + "'");
  min_c = {lo[0], lo[1], lo[2]};
  max_c = {hi[0], hi[1], hi[2]};
  if (!(max_c.x > min_c.x && max_c.y > min_c.y && max_c.z > min_c.z))
    throw std::invalid_argument("bounds: max corner must strictly dominate min corner");
}

void RunConfig::validate() const {
  if (!(mu_t >= 0.0))
    throw std::invalid_argument("config: mu_t must be >= 0");
  if (!(albedo >= 0.0 && albedo <= 1.0))
    throw std::invalid_argument("config: albedo must be in [0, 1]");
  if (!(g > -1.0 && g < 1.0))
    throw std::invalid_argument("config: g must be in (-1, 1)");
  if (grid < 1 || bins < 1 || paths < 1 || max_bounces < 1 || jobs < 1)
    throw std::invalid_argument("config: grid, bins, paths, max_bounces, jobs must be >= 1");
  if (!(bin_width > 0.0))
    throw std::invalid_argument("config: bin_width must be > 0");
  if (!(lambda_factor > 0.0) || !(lambda_scale > 0.0) || !(cycles > 0.0))
    throw std::invalid_argument("config: lambda_factor, lambda_scale, cycles must be > 0");
  if (mode != "montecarlo" && mode != "ballistic")
    throw std::invalid_argument("config: mode must be montecarlo or ballistic");
  if (falloff != "gamma-only" && falloff != "per-sample")
    throw std::invalid_argument("config: falloff must be gamma-only or per-sample");
  if (sweep != "all" && sweep != "density" && sweep != "anisotropy" && sweep != "wavelength")
    throw std::invalid_argument("config: sweep must be all, density, anisotropy or wavelength");
  if (!(bounds_max.x > bounds_min.x && bounds_max.y > bounds_min.y &&
        bounds_max.z > bounds_min.z))
    throw std::invalid_argument("config: bounds max corner must strictly dominate min corner");
}

RunConfig parse_config(const std::string &text, const std::string &origin) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(ss, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, line_no, "expected 'key = value', got '" + trim(raw_line) + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "scene") cfg.scene = value;
    else if (key == "mu_t") cfg.mu_t = to_double(origin, line_no, key, value);
    else if (key == "albedo") cfg.albedo = to_double(origin, line_no, key, value);
    else if (key == "g") cfg.g = to_double(origin, line_no, key, value);
    else if (key == "grid") cfg.grid = std::uint32_t(to_u64(origin, line_no, key, value));
    else if (key == "bins") cfg.bins = std::uint32_t(to_u64(origin, line_no, key, value));
    else if (key == "bin_width") cfg.bin_width = to_double(origin, line_no, key, value);
    else if (key == "paths") cfg.paths = to_u64(origin, line_no, key, value);
    else if (key == "max_bounces")
      cfg.max_bounces = std::uint32_t(to_u64(origin, line_no, key, value));
    else if (key == "seed") cfg.seed = to_u64(origin, line_no, key, value);
    else if (key == "mode") cfg.mode = value;
    else if (key == "voxels") {
      try {
        parse_voxels(value, cfg.voxels_x, cfg.voxels_y, cfg.voxels_z);
      } catch (const std::exception &e) {
        fail(origin, line_no, e.what());
      }
    } else if (key == "bounds") {
      try {
        parse_bounds(value, cfg.bounds_min, cfg.bounds_max);
      } catch (const std::exception &e) {
        fail(origin, line_no, e.what());
      }
    } else if (key == "lambda_factor") cfg.lambda_factor = to_double(origin, line_no, key, value);
    else if (key == "lambda_scale") cfg.lambda_scale = to_double(origin, line_no, key, value);
    else if (key == "cycles") cfg.cycles = to_double(origin, line_no, key, value);
    else if (key == "falloff") cfg.falloff = value;
    else if (key == "sweep") cfg.sweep = value;
    else if (key == "jobs") cfg.jobs = std::uint32_t(to_u64(origin, line_no, key, value));
    else {
      std::string keys;
      for (const std::string &k : kValidKeys)
        keys += (keys.empty() ? "" : ", ") + k;
      fail(origin, line_no, "unknown key '" + key + "' (valid keys: " + keys + ")");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

} // namespace nlos::io
