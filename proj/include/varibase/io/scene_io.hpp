#pragma once

#include <string>

#include "varibase/sim/scene.hpp"

namespace varibase::io {

/// Loads a scene description (JSON): world bounds plus a primitive list of
/// cylinders, boxes (optionally moving) and apertured walls; meters
/// throughout. Validates that primitives sit inside the bounds and that
/// aperture polygons are simple. See README for the schema.
sim::Scene load_scene(const std::string& path);

void save_scene(const std::string& path, const sim::Scene& scene);

/// True when the polygon has no self-intersections (shared endpoints of
/// adjacent edges excluded).
bool polygon_is_simple(const std::vector<Vec2>& polygon);

}  // namespace varibase::io
