#include "varibase/io/rig_io.hpp"

#include <fstream>

#include <json.hpp>

#include "varibase/core/errors.hpp"

namespace varibase::io {

using nlohmann::json;

namespace {

geometry::CameraIntrinsics parse_intrinsics(const json& j, size_t record) {
  try {
    return geometry::CameraIntrinsics(j.at("fx_px").get<double>(),
                                      j.at("fy_px").get<double>(),
                                      j.at("cx_px").get<double>(),
                                      j.at("cy_px").get<double>(),
                                      j.at("alpha").get<double>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("rig record " + std::to_string(record) + ": " + e.what());
  }
}

geometry::DistortionCoefficients parse_distortion(const json& j,
                                                  size_t record) {
  const auto k = j.at("distortion").get<std::vector<double>>();
  if (k.size() != 5) {
    throw ConfigError("rig record " + std::to_string(record) +
                      ": distortion needs 5 coefficients [k1,k2,k3,k4,k5]");
  }
  try {
    return geometry::DistortionCoefficients(k[0], k[1], k[2], k[3], k[4]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("rig record " + std::to_string(record) + ": " + e.what());
  }
}

Vec3 parse_vec3(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 3) throw ConfigError("expected a 3-vector");
  return Vec3(v[0], v[1], v[2]);
}

Mat3 rotation_from_rpy_deg(const Vec3& rpy_deg) {
  const double s = M_PI / 180.0;
  return (Eigen::AngleAxisd(rpy_deg.z() * s, Vec3::UnitZ()) *
          Eigen::AngleAxisd(rpy_deg.y() * s, Vec3::UnitY()) *
          Eigen::AngleAxisd(rpy_deg.x() * s, Vec3::UnitX()))
      .toRotationMatrix();
}

json intrinsics_to_json(const geometry::CameraIntrinsics& k) {
  return json{{"fx_px", k.fx},
              {"fy_px", k.fy},
              {"cx_px", k.cx},
              {"cy_px", k.cy},
              {"alpha", k.alpha}};
}

json distortion_to_json(const geometry::DistortionCoefficients& d) {
  return json::array({d.k1, d.k2, d.k3, d.k4, d.k5});
}

}  // namespace

RigFile load_rig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rig file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("rig file " + path + ": " + e.what());
  }

  RigFile rig;
  try {
    const auto size = j.at("image_size").get<std::vector<int>>();
    if (size.size() != 2 || size[0] <= 0 || size[1] <= 0) {
      throw ConfigError("rig image_size must be [width, height] > 0");
    }
    rig.image_size = {size[0], size[1]};

    const json& a = j.at("actuator");
    rig.actuator.min_baseline_m = a.at("min_baseline_m").get<double>();
    rig.actuator.max_baseline_m = a.at("max_baseline_m").get<double>();
    rig.actuator.relative_noise = a.at("relative_noise").get<double>();
    rig.actuator.samples_per_command = a.value("samples_per_command", 10);
    if (rig.actuator.relative_noise < 0.0) {
      throw ConfigError("rig actuator: relative_noise must be >= 0");
    }

    std::vector<rig::CalibrationEntry> entries;
    size_t index = 0;
    for (const json& rec : j.at("calibration")) {
      rig::CalibrationEntry e;
      e.baseline_m = rec.at("baseline_m").get<double>();
      e.intrinsics_left = parse_intrinsics(rec.at("left"), index);
      e.intrinsics_right = parse_intrinsics(rec.at("right"), index);
      e.distortion_left = parse_distortion(rec.at("left"), index);
      e.distortion_right = parse_distortion(rec.at("right"), index);
      const Mat3 R = rotation_from_rpy_deg(parse_vec3(rec.at("rotation_rpy_deg")));
      const Vec3 T = parse_vec3(rec.at("translation_m"));
      try {
        e.extrinsics = rig::pose_to_dual_quaternion(
            geometry::StereoExtrinsics(R, T));
      } catch (const std::invalid_argument& err) {
        throw ConfigError("rig record " + std::to_string(index) + ": " +
                          err.what());
      }
      entries.push_back(std::move(e));
      ++index;
    }
    rig.table = rig::CalibrationTable(std::move(entries));
  } catch (const json::exception& e) {
    throw ConfigError("rig file " + path + ": " + e.what());
  }

  if (rig.actuator.min_baseline_m < rig.table.min_baseline() ||
      rig.actuator.max_baseline_m > rig.table.max_baseline()) {
    throw ConfigError(
        "rig actuator stroke limits must lie within the calibration range");
  }
  return rig;
}

void save_rig(const std::string& path, const RigFile& rig) {
  json j;
  j["image_size"] = {rig.image_size.width, rig.image_size.height};
  j["actuator"] = {{"min_baseline_m", rig.actuator.min_baseline_m},
                   {"max_baseline_m", rig.actuator.max_baseline_m},
                   {"relative_noise", rig.actuator.relative_noise},
                   {"samples_per_command", rig.actuator.samples_per_command}};
  json calibration = json::array();
  for (const rig::CalibrationEntry& e : rig.table.entries()) {
    const geometry::StereoExtrinsics ext =
        rig::dual_quaternion_to_pose(e.extrinsics);
    const Vec3 rpy = ext.rotation.eulerAngles(2, 1, 0) * 180.0 / M_PI;
    json left = intrinsics_to_json(e.intrinsics_left);
    left["distortion"] = distortion_to_json(e.distortion_left);
    json right = intrinsics_to_json(e.intrinsics_right);
    right["distortion"] = distortion_to_json(e.distortion_right);
    calibration.push_back(
        {{"baseline_m", e.baseline_m},
         {"left", left},
         {"right", right},
         {"rotation_rpy_deg", {rpy.z(), rpy.y(), rpy.x()}},
         {"translation_m",
          {ext.translation.x(), ext.translation.y(), ext.translation.z()}}});
  }
  j["calibration"] = std::move(calibration);

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open rig file for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace varibase::io
