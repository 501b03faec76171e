#include "varibase/sim/render.hpp"

#include <cmath>
#include <stdexcept>

#include "varibase/geometry/distortion.hpp"

namespace varibase::sim {

namespace {

// splitmix64-style integer hash for value noise.
uint64_t hash_u64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double lattice_value(int64_t ix, int64_t iy, int64_t iz, int64_t tag,
                     uint64_t seed) {
  uint64_t h = seed;
  h = hash_u64(h ^ static_cast<uint64_t>(ix));
  h = hash_u64(h ^ static_cast<uint64_t>(iy));
  h = hash_u64(h ^ static_cast<uint64_t>(iz));
  h = hash_u64(h ^ static_cast<uint64_t>(tag));
  return (h >> 11) * 0x1.0p-53;
}

// Trilinear value noise over a cubic lattice in primitive-local coordinates.
double value_noise(const Vec3& p, double cell, int tag, uint64_t seed) {
  const double gx = p.x() / cell;
  const double gy = p.y() / cell;
  const double gz = p.z() / cell;
  const int64_t ix = static_cast<int64_t>(std::floor(gx));
  const int64_t iy = static_cast<int64_t>(std::floor(gy));
  const int64_t iz = static_cast<int64_t>(std::floor(gz));
  const double fx = gx - ix;
  const double fy = gy - iy;
  const double fz = gz - iz;
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz) {
    for (int dy = 0; dy <= 1; ++dy) {
      for (int dx = 0; dx <= 1; ++dx) {
        const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy) *
                         (dz ? fz : 1.0 - fz);
        acc += w * lattice_value(ix + dx, iy + dy, iz + dz, tag, seed);
      }
    }
  }
  return acc;
}

Vec3 primitive_local_point(const Primitive& prim, const Vec3& world,
                           double time) {
  if (const Box* b = std::get_if<Box>(&prim)) {
    return world - b->center_at(time);
  }
  if (const Cylinder* c = std::get_if<Cylinder>(&prim)) {
    return world - c->center;
  }
  if (const Wall* w = std::get_if<Wall>(&prim)) {
    return world - w->origin;
  }
  return world;
}

}  // namespace

Vec3 right_camera_center(const ObserverState& observer, double baseline_m) {
  return observer.position + observer.camera_to_world().col(0) * baseline_m;
}

RenderResult render_depth_ex(const Scene& scene, const ObserverState& observer,
                             const geometry::CameraIntrinsics& intr,
                             ImageSize size, double time) {
  if (!scene.in_bounds(observer.position)) {
    throw std::invalid_argument("render_depth: observer outside scene bounds");
  }
  RenderResult out;
  out.depth = DepthImage(size.width, size.height);
  out.primitive_index = Image<int>(size.width, size.height);
  out.point_x = Image<double>(size.width, size.height);
  out.point_y = Image<double>(size.width, size.height);
  out.point_z = Image<double>(size.width, size.height);
  out.velocity_x = Image<double>(size.width, size.height);
  out.velocity_y = Image<double>(size.width, size.height);
  out.velocity_z = Image<double>(size.width, size.height);

  if (scene.contains(observer.position, time)) {
    out.camera_contained = true;
    return out;
  }

  const Mat3 r_wc = observer.camera_to_world();
  for (int v = 0; v < size.height; ++v) {
    for (int u = 0; u < size.width; ++u) {
      const Vec2 n =
          geometry::pixel_to_normalized_affine(Vec2(u, v), intr);
      // Unit-z camera direction: the ray parameter is the Z depth.
      const Vec3 dir = r_wc * Vec3(n.x(), n.y(), 1.0);
      const auto hit = scene.cast_ray(observer.position, dir, time);
      if (!hit) continue;
      out.depth.set(u, v, hit->depth);
      out.primitive_index.set(u, v, hit->primitive_index);
      out.point_x.set(u, v, hit->point_world.x());
      out.point_y.set(u, v, hit->point_world.y());
      out.point_z.set(u, v, hit->point_world.z());
      out.velocity_x.set(u, v, hit->primitive_velocity.x());
      out.velocity_y.set(u, v, hit->primitive_velocity.y());
      out.velocity_z.set(u, v, hit->primitive_velocity.z());
    }
  }
  return out;
}

DepthImage render_depth(const Scene& scene, const ObserverState& observer,
                        const geometry::CameraIntrinsics& intr, ImageSize size,
                        double time) {
  return render_depth_ex(scene, observer, intr, size, time).depth;
}

Image<double> render_textured(const Scene& scene,
                              const ObserverState& observer,
                              const geometry::CameraIntrinsics& intr,
                              ImageSize size, double time,
                              double texture_cell_m, uint64_t seed) {
  const RenderResult r = render_depth_ex(scene, observer, intr, size, time);
  Image<double> gray(size.width, size.height);
  for (int v = 0; v < size.height; ++v) {
    for (int u = 0; u < size.width; ++u) {
      if (!r.depth.valid(u, v)) continue;
      const int idx = r.primitive_index.value(u, v);
      const Vec3 world(r.point_x.value(u, v), r.point_y.value(u, v),
                       r.point_z.value(u, v));
      const Vec3 local =
          primitive_local_point(scene.primitives()[idx], world, time);
      gray.set(u, v, value_noise(local, texture_cell_m, idx, seed));
    }
  }
  return gray;
}

}  // namespace varibase::sim
