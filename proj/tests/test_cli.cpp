// End-to-end checks of the CLI binary: exit codes, artifact schemas, and the
// documented trends of the emitted CSVs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "varibase/geometry/depth.hpp"
#include "varibase/io/grid_io.hpp"
#include "varibase/io/rig_io.hpp"

using namespace varibase;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(VARIBASE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string data_path(const std::string& rel) {
  return std::string(VARIBASE_DATA_DIR) + "/" + rel;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("missing subcommand and config errors map to the documented codes") {
  CHECK(run_cli("") != 0);
  CHECK(run_cli("sim-forest --scene /nonexistent.json --rig /nonexistent.json "
                "--out /tmp/vb_cli_na") == 2);
  CHECK(run_cli("sim-imo --scene " + data_path("scenes/imo.json") + " --rig " +
                data_path("rigs/imo_rig.json") +
                " --baseline bogus:1 --out /tmp/vb_cli_na") == 2);
}

TEST_CASE("calib emits a loadable rig and a slope-1 fit") {
  const fs::path dir = fresh_dir("vb_cli_calib");
  const fs::path rig_path = dir / "rig.json";
  CHECK(run_cli("calib --noise 0.007 --seed 5 --out " + dir.string() +
                " --write-rig " + rig_path.string()) == 0);

  const io::RigFile rig = io::load_rig(rig_path.string());
  CHECK(rig.table.entries().size() == 10);
  CHECK(rig.table.min_baseline() == doctest::Approx(0.1));
  CHECK(rig.table.max_baseline() == doctest::Approx(0.3));

  const auto fit = read_csv(dir / "calib_fit.csv");
  REQUIRE(fit.size() == 2);  // header + one row
  const double slope = std::stod(fit[1][0]);
  const double max_residual = std::stod(fit[1][1]);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.01));
  CHECK(max_residual <= 0.007 * 0.3);
  fs::remove_all(dir);
}

TEST_CASE("sync-limits CSV follows the bound's monotone trends") {
  const fs::path dir = fresh_dir("vb_cli_sync");
  CHECK(run_cli("sync-limits --out " + dir.string()) == 0);
  const auto rows = read_csv(dir / "sync_limits.csv");
  REQUIRE(rows.size() > 10);
  // v_max falls with baseline at fixed dt, and falls with dt at fixed
  // baseline.
  double prev_b = -1.0, prev_v_b = 0.0;
  double prev_dt = -1.0, prev_v_dt = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double b = std::stod(rows[i][0]);
    const double dt = std::stod(rows[i][1]);
    const double v = std::stod(rows[i][2]);
    if (dt == 0.005) {
      if (prev_b >= 0.0) REQUIRE(v < prev_v_b);
      prev_b = b;
      prev_v_b = v;
    }
    if (b == 0.1) {
      if (prev_dt >= 0.0 && dt > prev_dt) REQUIRE(v < prev_v_dt);
      prev_dt = dt;
      prev_v_dt = v;
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("sim-gap dumps consistent first-frame grids on request") {
  const fs::path dir = fresh_dir("vb_cli_grids");
  CHECK(run_cli("sim-gap --scene " + data_path("scenes/gap_rect.json") +
                " --rig " + data_path("rigs/gap_rig.json") +
                " --baseline variable:0.2 --steps 5 --dump-grids --out " +
                dir.string()) == 0);
  const io::LoadedGrid depth = io::read_grid((dir / "depth_t0.vbgrid").string());
  const io::LoadedGrid disparity =
      io::read_grid((dir / "disparity_t0.vbgrid").string());
  CHECK(depth.units == "meters");
  CHECK(disparity.units == "pixels");
  REQUIRE(depth.grid.size() == disparity.grid.size());
  // Quantized disparity within half a pixel of b*f/Z.
  const io::RigFile rig = io::load_rig(data_path("rigs/gap_rig.json"));
  const double bf = rig.actuator.min_baseline_m *
                    rig.table.entries().front().intrinsics_left.fx;
  for (int y = 0; y < depth.grid.height(); y += 9) {
    for (int x = 0; x < depth.grid.width(); x += 9) {
      if (!disparity.grid.valid(x, y)) continue;
      REQUIRE(std::abs(disparity.grid.value(x, y) -
                       bf / depth.grid.value(x, y)) <= 0.5 + 1e-12);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("VARIBASE_KERNELS forces the backend recorded in run metadata") {
  const fs::path dir = fresh_dir("vb_cli_backend");
  const std::string cmd = "VARIBASE_KERNELS=scalar " +
                          std::string(VARIBASE_CLI_PATH) +
                          " sync-limits --out " + dir.string() +
                          " > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream meta(dir / "run_metadata.json");
  const std::string text(std::istreambuf_iterator<char>(meta), {});
  CHECK(text.find("\"kernel_backend\": \"scalar\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("analyze-errors writes the ratio summary with all rows within "
          "band") {
  const fs::path dir = fresh_dir("vb_cli_errors");
  CHECK(run_cli("analyze-errors --out " + dir.string()) == 0);
  const auto rows = read_csv(dir / "ratio_summary.csv");
  REQUIRE(rows.size() == 14);  // header + 7 intrinsic + 6 extrinsic
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].back() == "1");
  }
  CHECK(fs::exists(dir / "run_metadata.json"));
  CHECK(fs::exists(dir / "sweep_k3_f2mm.csv"));
  fs::remove_all(dir);
}
