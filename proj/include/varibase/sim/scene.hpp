#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "varibase/core/types.hpp"

namespace varibase::sim {

// World frame matches the camera at identity pose: x right, y down,
// z forward. "Vertical" is the y axis.

/// Vertical cylinder (tree trunk): axis along y through `center`, spanning
/// center.y +/- height/2. Open-ended; rays parallel to the axis miss.
struct Cylinder {
  Vec3 center = Vec3::Zero();
  double radius = 0.1;
  double height = 2.0;
};

/// Axis-aligned box. A nonzero velocity makes it the scene's independently
/// moving primitive: center(t) = center + velocity * t.
struct Box {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3(0.1, 0.1, 0.1);
  Vec3 velocity = Vec3::Zero();

  Vec3 center_at(double time) const { return center + velocity * time; }
};

/// Finite rectangular wall with an optional polygonal aperture (hole).
/// u_axis/v_axis are unit in-plane axes; the aperture polygon lives in
/// (u, v) coordinates about the wall origin and must be simple.
struct Wall {
  Vec3 origin = Vec3::Zero();
  Vec3 u_axis = Vec3::UnitX();
  Vec3 v_axis = Vec3::UnitY();
  double half_u = 1.0;
  double half_v = 1.0;
  std::vector<Vec2> aperture;

  Vec3 normal() const { return u_axis.cross(v_axis); }
};

using Primitive = std::variant<Cylinder, Box, Wall>;

struct RayHit {
  double depth = 0.0;  // optical-axis depth (ray parameter for unit-z rays)
  int primitive_index = -1;
  Vec3 point_world = Vec3::Zero();
  Vec3 primitive_velocity = Vec3::Zero();
};

/// Even-odd test, boundary-inclusive enough for pixel-center sampling.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon);

/// Primitive set supporting nearest-hit ray queries at a given time.
class Scene {
 public:
  Scene() = default;
  Scene(std::vector<Primitive> primitives, const Vec3& bounds_min,
        const Vec3& bounds_max);

  const std::vector<Primitive>& primitives() const { return primitives_; }
  const Vec3& bounds_min() const { return bounds_min_; }
  const Vec3& bounds_max() const { return bounds_max_; }

  bool in_bounds(const Vec3& p) const;

  /// Nearest intersection with ray origin + t*dir for t > kRayEpsilon,
  /// where `dir` need not be normalized (render uses unit-z camera rays so
  /// t is the Z depth). Empty optional when nothing is hit.
  std::optional<RayHit> cast_ray(const Vec3& origin, const Vec3& dir,
                                 double time) const;

  /// True when the point is inside any solid primitive at `time`.
  bool contains(const Vec3& p, double time) const;

  /// Distance from a point to the nearest primitive surface (collision
  /// checks); walls count only when the point is within their rectangle
  /// footprint.
  double distance_to_nearest(const Vec3& p, double time) const;

  static constexpr double kRayEpsilon = 1e-9;

 private:
  std::vector<Primitive> primitives_;
  Vec3 bounds_min_ = Vec3(-100, -100, -100);
  Vec3 bounds_max_ = Vec3(100, 100, 100);
};

/// Kinematic observer: position/velocity in world, unit heading (camera
/// optical axis). Level flight; heading parallel to the vertical axis is
/// rejected when building the camera frame.
struct ObserverState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 heading = Vec3::UnitZ();
  double time = 0.0;

  /// Camera-to-world rotation: columns are the camera x (right), y (down),
  /// z (forward = heading) axes. Throws DegenerateGeometryError when the
  /// heading is within ~1e-9 of vertical.
  Mat3 camera_to_world() const;
};

}  // namespace varibase::sim
