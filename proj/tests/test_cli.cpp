#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlos/io/formats.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = NLOS_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output; // stdout + stderr
};

RunResult run_cli(const std::string &args) {
  const fs::path out = fs::temp_directory_path() / "nlos_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WEXITSTATUS(status), ss.str()};
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "nlos_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("simulate-reconstruct-filter-project pipeline") {
  const fs::path dir = work_dir();
  const std::string h_path = (dir / "h.nlosh").string();

  const RunResult sim = run_cli("simulate --scene z_letter --mu-t 0 --albedo 0 --g 0 --grid 12 "
                                "--bins 2048 --bin-width 16e-12 --paths 500 --seed 7 --out " +
                                h_path);
  CHECK(sim.exit_code == 0);
  CHECK(sim.output.find("total_energy=") != std::string::npos);
  CHECK(sim.output.find("overflow_fraction=") != std::string::npos);
  CHECK(fs::exists(h_path));

  const std::string vol_path = (dir / "vol.nlosv").string();
  const RunResult rec = run_cli("reconstruct --in " + h_path +
                                " --voxels 6,6,6 --bounds -0.6,-0.6,1.4:0.6,0.6,2.6 "
                                "--lambda-factor 4 --cycles 4 --out " +
                                vol_path);
  CHECK(rec.exit_code == 0);
  CHECK(fs::exists(vol_path));
  {
    // default lambda = 4 * (3.2 m / 12 samples)
    const auto vol = nlos::io::read_vol(vol_path);
    CHECK(vol.pulse_lambda == doctest::Approx(4.0 * 3.2 / 12.0).epsilon(1e-12));
    CHECK(!vol.filtered);
  }

  // lambda-scale doubles the recorded wavelength
  const std::string vol2_path = (dir / "vol2.nlosv").string();
  const RunResult rec2 = run_cli("reconstruct --in " + h_path + " --voxels 6,6,6 --lambda-scale 2 "
                                 "--bounds -0.6,-0.6,1.4:0.6,0.6,2.6 --out " +
                                 vol2_path);
  CHECK(rec2.exit_code == 0);
  const auto vol2 = nlos::io::read_vol(vol2_path);
  CHECK(vol2.pulse_lambda == doctest::Approx(2.0 * 4.0 * 3.2 / 12.0).epsilon(1e-12));

  // vacuum filter: byte-identical payload, filtered flag set
  const std::string volf_path = (dir / "vol_f.nlosv").string();
  const RunResult flt =
      run_cli("filter --in " + vol_path + " --mu-t 0 --albedo 0 --out " + volf_path);
  CHECK(flt.exit_code == 0);
  const std::string raw_in = slurp(vol_path);
  const std::string raw_out = slurp(volf_path);
  // the payloads differ only in the filtered flag byte
  const std::size_t flag_off = 6 + 4 + 48 + 12 + 16;
  CHECK(raw_in.size() == raw_out.size());
  CHECK(raw_in.substr(0, flag_off) == raw_out.substr(0, flag_off));
  CHECK(raw_in.substr(flag_off + 1) == raw_out.substr(flag_off + 1));
  CHECK(raw_in[flag_off] == '\x00');
  CHECK(raw_out[flag_off] == '\x01');

  // double filtering is refused
  const RunResult dbl = run_cli("filter --in " + volf_path + " --mu-t 1 --albedo 0.5 --out " +
                                (dir / "nope.nlosv").string());
  CHECK(dbl.exit_code != 0);
  CHECK(dbl.output.find("error:") != std::string::npos);
  CHECK(dbl.output.find("already") != std::string::npos);

  // missing medium flags
  const RunResult missing =
      run_cli("filter --in " + vol_path + " --out " + (dir / "nope.nlosv").string());
  CHECK(missing.exit_code != 0);

  // three views, PGM dimensions match the collapsed grid
  for (const std::string view : {"front", "lateral", "top"}) {
    const std::string img_path = (dir / ("img_" + view + ".pgm")).string();
    const RunResult prj =
        run_cli("project --in " + volf_path + " --view " + view + " --out " + img_path);
    CHECK(prj.exit_code == 0);
    const std::string pgm = slurp(img_path);
    CHECK(pgm.substr(0, 3) == "P5\n");
    CHECK(pgm.find("view=" + view) != std::string::npos);
    CHECK(pgm.find("\n6 6\n255\n") != std::string::npos);
  }

  const RunResult bad_view =
      run_cli("project --in " + volf_path + " --view oblique --out " + (dir / "x.pgm").string());
  CHECK(bad_view.exit_code != 0);
  CHECK(bad_view.output.find("error:") != std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("usage errors are reported with nonzero exit") {
  const RunResult bad_albedo =
      run_cli("simulate --scene z_letter --albedo 1.2 --out /tmp/x.nlosh");
  CHECK(bad_albedo.exit_code != 0);

  const RunResult bad_scene = run_cli("simulate --scene cube --out /tmp/x.nlosh --paths 1 --grid 1");
  CHECK(bad_scene.exit_code != 0);
  CHECK(bad_scene.output.find("error:") != std::string::npos);

  const RunResult bad_voxels = run_cli("reconstruct --in /tmp/missing.nlosh --voxels 3,3 "
                                       "--out /tmp/x.nlosv");
  CHECK(bad_voxels.exit_code != 0);

  const RunResult no_sub = run_cli("");
  CHECK(no_sub.exit_code != 0);
}

TEST_CASE("sweep dry run and tiny density sweep are reproducible") {
  const fs::path dir = work_dir();
  const fs::path cfg_path = dir / "sweep.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "scene = z_letter\n"
        << "grid = 8\n"
        << "bins = 2048\n"
        << "paths = 200\n"
        << "voxels = 4,4,4\n"
        << "sweep = density\n"
        << "seed = 7\n";
  }

  const RunResult dry = run_cli("sweep --config " + cfg_path.string() + " --out-dir " +
                                (dir / "figs").string() + " --dry-run");
  CHECK(dry.exit_code == 0);
  CHECK(dry.output.find("plan:") != std::string::npos);
  CHECK(dry.output.find("cells=15") != std::string::npos);
  CHECK(!fs::exists(dir / "figs" / "manifest.txt"));

  const RunResult s1 = run_cli("sweep --config " + cfg_path.string() + " --out-dir " +
                               (dir / "figs1").string());
  CHECK(s1.exit_code == 0);
  const RunResult s2 = run_cli("sweep --config " + cfg_path.string() + " --out-dir " +
                               (dir / "figs2").string() + " --jobs 2");
  CHECK(s2.exit_code == 0);

  const std::string m1 = slurp(dir / "figs1" / "manifest.txt");
  const std::string m2 = slurp(dir / "figs2" / "manifest.txt");
  CHECK(m1 == m2);
  std::size_t lines = 0, pgms = 0;
  for (char c : m1)
    if (c == '\n')
      ++lines;
  CHECK(lines == 15);
  for (const auto &entry : fs::directory_iterator(dir / "figs1"))
    if (entry.path().extension() == ".pgm") {
      ++pgms;
      CHECK(slurp(entry.path()) == slurp(dir / "figs2" / entry.path().filename()));
    }
  CHECK(pgms == 15);

  fs::remove_all(dir);
}
