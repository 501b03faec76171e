#include "varibase/sim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varibase/core/errors.hpp"

namespace varibase::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> intersect_cylinder(const Cylinder& c, const Vec3& o,
                                         const Vec3& d) {
  const double ox = o.x() - c.center.x();
  const double oz = o.z() - c.center.z();
  const double a = d.x() * d.x() + d.z() * d.z();
  if (a < 1e-300) return std::nullopt;  // ray parallel to the axis
  const double b = 2.0 * (ox * d.x() + oz * d.z());
  const double q = ox * ox + oz * oz - c.radius * c.radius;
  const double disc = b * b - 4.0 * a * q;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double y_lo = c.center.y() - 0.5 * c.height;
  const double y_hi = c.center.y() + 0.5 * c.height;
  for (double t : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)}) {
    if (t > Scene::kRayEpsilon) {
      const double y = o.y() + t * d.y();
      if (y >= y_lo && y <= y_hi) return t;
    }
  }
  return std::nullopt;
}

std::optional<double> intersect_box(const Box& box, const Vec3& o,
                                    const Vec3& d, double time) {
  const Vec3 c = box.center_at(time);
  const Vec3 lo = c - box.half_extents;
  const Vec3 hi = c + box.half_extents;
  double t_enter = -kInf;
  double t_exit = kInf;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d(i)) < 1e-300) {
      if (o(i) < lo(i) || o(i) > hi(i)) return std::nullopt;
      continue;
    }
    double t0 = (lo(i) - o(i)) / d(i);
    double t1 = (hi(i) - o(i)) / d(i);
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) return std::nullopt;
  }
  if (t_enter > Scene::kRayEpsilon) return t_enter;
  if (t_exit > Scene::kRayEpsilon) return t_exit;  // origin inside
  return std::nullopt;
}

std::optional<double> intersect_wall(const Wall& w, const Vec3& o,
                                     const Vec3& d) {
  const Vec3 n = w.normal();
  const double denom = d.dot(n);
  if (std::abs(denom) < 1e-300) return std::nullopt;
  const double t = (w.origin - o).dot(n) / denom;
  if (t <= Scene::kRayEpsilon) return std::nullopt;
  const Vec3 p = o + t * d - w.origin;
  const double u = p.dot(w.u_axis);
  const double v = p.dot(w.v_axis);
  if (std::abs(u) > w.half_u || std::abs(v) > w.half_v) return std::nullopt;
  if (!w.aperture.empty() && point_in_polygon(Vec2(u, v), w.aperture)) {
    return std::nullopt;  // through the hole
  }
  return t;
}

}  // namespace

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross =
          a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

Scene::Scene(std::vector<Primitive> primitives, const Vec3& bounds_min,
             const Vec3& bounds_max)
    : primitives_(std::move(primitives)),
      bounds_min_(bounds_min),
      bounds_max_(bounds_max) {}

bool Scene::in_bounds(const Vec3& p) const {
  return (p.array() >= bounds_min_.array()).all() &&
         (p.array() <= bounds_max_.array()).all();
}

std::optional<RayHit> Scene::cast_ray(const Vec3& origin, const Vec3& dir,
                                      double time) const {
  RayHit best;
  best.depth = kInf;
  for (size_t i = 0; i < primitives_.size(); ++i) {
    std::optional<double> t;
    Vec3 velocity = Vec3::Zero();
    if (const Cylinder* c = std::get_if<Cylinder>(&primitives_[i])) {
      t = intersect_cylinder(*c, origin, dir);
    } else if (const Box* b = std::get_if<Box>(&primitives_[i])) {
      t = intersect_box(*b, origin, dir, time);
      velocity = b->velocity;
    } else if (const Wall* w = std::get_if<Wall>(&primitives_[i])) {
      t = intersect_wall(*w, origin, dir);
    }
    if (t && *t < best.depth) {
      best.depth = *t;
      best.primitive_index = static_cast<int>(i);
      best.point_world = origin + *t * dir;
      best.primitive_velocity = velocity;
    }
  }
  if (best.primitive_index < 0) return std::nullopt;
  return best;
}

bool Scene::contains(const Vec3& p, double time) const {
  for (const Primitive& prim : primitives_) {
    if (const Cylinder* c = std::get_if<Cylinder>(&prim)) {
      const double dx = p.x() - c->center.x();
      const double dz = p.z() - c->center.z();
      if (dx * dx + dz * dz < c->radius * c->radius &&
          std::abs(p.y() - c->center.y()) < 0.5 * c->height) {
        return true;
      }
    } else if (const Box* b = std::get_if<Box>(&prim)) {
      const Vec3 d = (p - b->center_at(time)).cwiseAbs();
      if ((d.array() < b->half_extents.array()).all()) return true;
    }
    // Walls have zero volume.
  }
  return false;
}

double Scene::distance_to_nearest(const Vec3& p, double time) const {
  double best = kInf;
  for (const Primitive& prim : primitives_) {
    double d = kInf;
    if (const Cylinder* c = std::get_if<Cylinder>(&prim)) {
      if (std::abs(p.y() - c->center.y()) <= 0.5 * c->height) {
        const double dx = p.x() - c->center.x();
        const double dz = p.z() - c->center.z();
        d = std::sqrt(dx * dx + dz * dz) - c->radius;
      }
    } else if (const Box* b = std::get_if<Box>(&prim)) {
      const Vec3 q = (p - b->center_at(time)).cwiseAbs() - b->half_extents;
      const Vec3 outside = q.cwiseMax(0.0);
      const double inside = std::min(0.0, q.maxCoeff());
      d = outside.norm() + inside;
    } else if (const Wall* w = std::get_if<Wall>(&prim)) {
      const Vec3 rel = p - w->origin;
      const double u = rel.dot(w->u_axis);
      const double v = rel.dot(w->v_axis);
      if (std::abs(u) <= w->half_u && std::abs(v) <= w->half_v &&
          !(w->aperture.size() && point_in_polygon(Vec2(u, v), w->aperture))) {
        d = std::abs(rel.dot(w->normal()));
      }
    }
    best = std::min(best, d);
  }
  return best;
}

Mat3 ObserverState::camera_to_world() const {
  const Vec3 z = heading.normalized();
  const Vec3 up_world(0.0, -1.0, 0.0);  // y is down
  const Vec3 x_unnorm = z.cross(up_world);
  if (x_unnorm.norm() < 1e-9) {
    throw DegenerateGeometryError(
        "ObserverState: heading parallel to the vertical axis");
  }
  const Vec3 x = x_unnorm.normalized();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

}  // namespace varibase::sim
