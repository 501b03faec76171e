#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "varibase/core/errors.hpp"
#include "varibase/core/random.hpp"
#include "varibase/io/csv.hpp"
#include "varibase/io/grid_io.hpp"
#include "varibase/io/rig_io.hpp"
#include "varibase/io/run_metadata.hpp"
#include "varibase/io/scene_io.hpp"
#include "varibase/rig/calibration_table.hpp"

using namespace varibase;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

io::RigFile synthetic_rig() {
  io::RigFile rig;
  const geometry::CameraModel cam = geometry::make_square_sensor_camera(
      8.0, {128, 128}, 4.24, 0.0,
      geometry::DistortionCoefficients(-0.05, 0.01, 5e-4, -5e-4, 1e-4));
  rig.table = rig::make_synthetic_table(cam, 0.1, 0.3, 5, 0.1, 42);
  rig.actuator = {0.1, 0.3, 0.002, 10};
  rig.image_size = {128, 128};
  return rig;
}

}  // namespace

TEST_CASE("grid dump round trip is bit-exact") {
  Rng rng(9);
  Image<double> grid(37, 21);
  for (int y = 0; y < 21; ++y) {
    for (int x = 0; x < 37; ++x) {
      if (rng.uniform() < 0.8) grid.set(x, y, rng.uniform(0.01, 99.0));
    }
  }
  const std::string path = temp_path("vb_grid_test.bin");
  io::write_grid(path, grid, "meters");
  const io::LoadedGrid loaded = io::read_grid(path);
  CHECK(loaded.units == "meters");
  CHECK(loaded.grid.values() == grid.values());
  CHECK(loaded.grid.valid_mask() == grid.valid_mask());
  std::remove(path.c_str());
}

TEST_CASE("grid reader rejects malformed headers") {
  const std::string path = temp_path("vb_grid_bad.bin");
  std::ofstream(path) << "NOTAGRID 1\n";
  CHECK_THROWS_AS(io::read_grid(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("rig file round trip preserves the table") {
  const io::RigFile rig = synthetic_rig();
  const std::string path = temp_path("vb_rig_test.json");
  io::save_rig(path, rig);
  const io::RigFile loaded = io::load_rig(path);
  CHECK(loaded.image_size == rig.image_size);
  CHECK(loaded.actuator.relative_noise ==
        doctest::Approx(rig.actuator.relative_noise));
  REQUIRE(loaded.table.entries().size() == rig.table.entries().size());
  for (size_t i = 0; i < rig.table.entries().size(); ++i) {
    const auto& a = rig.table.entries()[i];
    const auto& b = loaded.table.entries()[i];
    CHECK(b.baseline_m == doctest::Approx(a.baseline_m).epsilon(1e-12));
    CHECK(b.intrinsics_left.fx ==
          doctest::Approx(a.intrinsics_left.fx).epsilon(1e-12));
    const auto pa = rig::dual_quaternion_to_pose(a.extrinsics);
    const auto pb = rig::dual_quaternion_to_pose(b.extrinsics);
    CHECK((pa.rotation - pb.rotation).norm() < 1e-9);
    CHECK((pa.translation - pb.translation).norm() < 1e-9);
  }
}

TEST_CASE("rig loader names the first violated record") {
  const std::string path = temp_path("vb_rig_bad.json");
  std::ofstream(path) << R"({
    "image_size": [128, 128],
    "actuator": {"min_baseline_m": 0.1, "max_baseline_m": 0.3,
                  "relative_noise": 0.002},
    "calibration": [
      {"baseline_m": 0.1,
       "left": {"fx_px": 240, "fy_px": 240, "cx_px": 64, "cy_px": 64,
                 "alpha": 0, "distortion": [0,0,0,0,0]},
       "right": {"fx_px": 240, "fy_px": 240, "cx_px": 64, "cy_px": 64,
                  "alpha": 0, "distortion": [0,0,0,0,0]},
       "rotation_rpy_deg": [0,0,0], "translation_m": [0.1, 0, 0]},
      {"baseline_m": 0.2,
       "left": {"fx_px": 240, "fy_px": 240, "cx_px": 64, "cy_px": 64,
                 "alpha": 0, "distortion": [0,0,0,0,0]},
       "right": {"fx_px": 240, "fy_px": 240, "cx_px": 64, "cy_px": 64,
                  "alpha": 0, "distortion": [0,0,0,0,0]},
       "rotation_rpy_deg": [0,0,0], "translation_m": [0.25, 0, 0]}
    ]})";
  CHECK_THROWS_WITH_AS(io::load_rig(path), doctest::Contains("record 1"),
                       ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("scene file round trip and aperture validation") {
  sim::Wall wall;
  wall.origin = Vec3(0, 0, 3.5);
  wall.u_axis = Vec3::UnitX();
  wall.v_axis = Vec3::UnitY();
  wall.half_u = 1.2;
  wall.half_v = 1.2;
  wall.aperture = {{-0.25, -0.3}, {0.25, -0.3}, {0.25, 0.3}, {-0.25, 0.3}};
  sim::Cylinder tree{Vec3(0.5, 0, 2.0), 0.1, 3.0};
  sim::Box mover;
  mover.center = Vec3(0, 0, 1.0);
  mover.velocity = Vec3(0, 0, 0.4);
  const sim::Scene scene({wall, tree, mover}, Vec3(-5, -5, -1),
                         Vec3(5, 5, 15));
  const std::string path = temp_path("vb_scene_test.json");
  io::save_scene(path, scene);
  const sim::Scene loaded = io::load_scene(path);
  REQUIRE(loaded.primitives().size() == 3);
  const sim::Wall* w = std::get_if<sim::Wall>(&loaded.primitives()[0]);
  REQUIRE(w != nullptr);
  CHECK(w->aperture.size() == 4);
  CHECK(w->half_u == doctest::Approx(1.2));
  const sim::Box* b = std::get_if<sim::Box>(&loaded.primitives()[2]);
  REQUIRE(b != nullptr);
  CHECK(b->velocity.z() == doctest::Approx(0.4));
  std::remove(path.c_str());
}

TEST_CASE("scene loader rejects self-intersecting apertures") {
  const std::string path = temp_path("vb_scene_bad.json");
  std::ofstream(path) << R"({
    "bounds_min": [-5,-5,-1], "bounds_max": [5,5,15],
    "primitives": [
      {"type": "wall", "origin": [0,0,3], "u_axis": [1,0,0],
       "v_axis": [0,1,0], "half_u": 1, "half_v": 1,
       "aperture": [[-0.2,-0.2],[0.2,0.2],[0.2,-0.2],[-0.2,0.2]]}
    ]})";
  CHECK_THROWS_WITH_AS(io::load_scene(path),
                       doctest::Contains("self-intersects"), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("scene loader rejects out-of-bounds primitives") {
  const std::string path = temp_path("vb_scene_oob.json");
  std::ofstream(path) << R"({
    "bounds_min": [-1,-1,-1], "bounds_max": [1,1,1],
    "primitives": [
      {"type": "cylinder", "center": [0,0,5], "radius": 0.1, "height": 1}
    ]})";
  CHECK_THROWS_WITH_AS(io::load_scene(path), doctest::Contains("bounds"),
                       ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("polygon simplicity test") {
  CHECK(io::polygon_is_simple({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK_FALSE(io::polygon_is_simple({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK_FALSE(io::polygon_is_simple({{0, 0}, {1, 0}}));
}

TEST_CASE("double formatting is deterministic and round-trip clean") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5e-8) == "-2.5e-08");
}

TEST_CASE("run id is a stable hash of the canonical config") {
  const std::string a = io::run_id_from("command=sim-imo;seed=1;");
  const std::string b = io::run_id_from("command=sim-imo;seed=1;");
  const std::string c = io::run_id_from("command=sim-imo;seed=2;");
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == 16);
}

TEST_CASE("csv writer emits the run id cross-reference") {
  const std::string path = temp_path("vb_csv_test.csv");
  {
    io::CsvWriter csv(path, {"a", "b"}, "deadbeef00000000");
    csv.row({io::CsvWriter::cell(1.5), io::CsvWriter::cell(2)});
  }
  const std::string text = slurp(path);
  CHECK(text == "# run_id=deadbeef00000000\na,b\n1.5,2\n");
  std::remove(path.c_str());
}
