#pragma once

#include <string>

#include "varibase/rig/actuator.hpp"
#include "varibase/rig/calibration_table.hpp"

namespace varibase::io {

/// On-disk rig description (JSON): a calibration record per baseline plus
/// the actuator model. Units: meters (baselines, translations), pixels
/// (intrinsics), degrees (record rotations). See README for the schema.
struct RigFile {
  rig::CalibrationTable table;
  rig::ActuatorModel actuator;
  ImageSize image_size{128, 128};
};

/// Parses and validates; throws ConfigError naming the first violation and
/// its record index.
RigFile load_rig(const std::string& path);

void save_rig(const std::string& path, const RigFile& rig);

}  // namespace varibase::io
