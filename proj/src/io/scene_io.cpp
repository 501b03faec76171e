#include "varibase/io/scene_io.hpp"

#include <fstream>

#include <json.hpp>

#include "varibase/core/errors.hpp"

namespace varibase::io {

using nlohmann::json;

namespace {

Vec3 parse_vec3(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 3) throw ConfigError("expected a 3-vector");
  return Vec3(v[0], v[1], v[2]);
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  auto cross = [](const Vec2& o, const Vec2& p, const Vec2& q) {
    return (p.x() - o.x()) * (q.y() - o.y()) -
           (p.y() - o.y()) * (q.x() - o.x());
  };
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j],
                             poly[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

sim::Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("scene file " + path + ": " + e.what());
  }

  try {
    const Vec3 bounds_min = parse_vec3(j.at("bounds_min"));
    const Vec3 bounds_max = parse_vec3(j.at("bounds_max"));
    std::vector<sim::Primitive> primitives;
    size_t index = 0;
    for (const json& p : j.at("primitives")) {
      const std::string where = "scene primitive " + std::to_string(index);
      const std::string type = p.at("type").get<std::string>();
      Vec3 anchor;
      if (type == "cylinder") {
        sim::Cylinder c;
        c.center = parse_vec3(p.at("center"));
        c.radius = p.at("radius").get<double>();
        c.height = p.at("height").get<double>();
        if (!(c.radius > 0.0) || !(c.height > 0.0)) {
          throw ConfigError(where + ": radius and height must be > 0");
        }
        anchor = c.center;
        primitives.emplace_back(c);
      } else if (type == "box") {
        sim::Box b;
        b.center = parse_vec3(p.at("center"));
        b.half_extents = parse_vec3(p.at("half_extents"));
        if (p.contains("velocity")) b.velocity = parse_vec3(p.at("velocity"));
        if (!(b.half_extents.minCoeff() > 0.0)) {
          throw ConfigError(where + ": half_extents must be > 0");
        }
        anchor = b.center;
        primitives.emplace_back(b);
      } else if (type == "wall") {
        sim::Wall w;
        w.origin = parse_vec3(p.at("origin"));
        w.u_axis = parse_vec3(p.at("u_axis")).normalized();
        w.v_axis = parse_vec3(p.at("v_axis")).normalized();
        w.half_u = p.at("half_u").get<double>();
        w.half_v = p.at("half_v").get<double>();
        if (std::abs(w.u_axis.dot(w.v_axis)) > 1e-9) {
          throw ConfigError(where + ": wall axes must be orthogonal");
        }
        if (p.contains("aperture")) {
          for (const json& vert : p.at("aperture")) {
            const auto uv = vert.get<std::vector<double>>();
            if (uv.size() != 2) {
              throw ConfigError(where + ": aperture vertices are [u, v]");
            }
            w.aperture.emplace_back(uv[0], uv[1]);
          }
          if (!w.aperture.empty() && !polygon_is_simple(w.aperture)) {
            throw ConfigError(where + ": aperture polygon self-intersects");
          }
        }
        anchor = w.origin;
        primitives.emplace_back(w);
      } else {
        throw ConfigError(where + ": unknown type '" + type + "'");
      }
      if ((anchor.array() < bounds_min.array()).any() ||
          (anchor.array() > bounds_max.array()).any()) {
        throw ConfigError(where + ": outside scene bounds");
      }
      ++index;
    }
    return sim::Scene(std::move(primitives), bounds_min, bounds_max);
  } catch (const json::exception& e) {
    throw ConfigError("scene file " + path + ": " + e.what());
  }
}

void save_scene(const std::string& path, const sim::Scene& scene) {
  json j;
  j["bounds_min"] = vec3_to_json(scene.bounds_min());
  j["bounds_max"] = vec3_to_json(scene.bounds_max());
  json prims = json::array();
  for (const sim::Primitive& p : scene.primitives()) {
    if (const sim::Cylinder* c = std::get_if<sim::Cylinder>(&p)) {
      prims.push_back({{"type", "cylinder"},
                       {"center", vec3_to_json(c->center)},
                       {"radius", c->radius},
                       {"height", c->height}});
    } else if (const sim::Box* b = std::get_if<sim::Box>(&p)) {
      prims.push_back({{"type", "box"},
                       {"center", vec3_to_json(b->center)},
                       {"half_extents", vec3_to_json(b->half_extents)},
                       {"velocity", vec3_to_json(b->velocity)}});
    } else if (const sim::Wall* w = std::get_if<sim::Wall>(&p)) {
      json aperture = json::array();
      for (const Vec2& v : w->aperture) {
        aperture.push_back(json::array({v.x(), v.y()}));
      }
      prims.push_back({{"type", "wall"},
                       {"origin", vec3_to_json(w->origin)},
                       {"u_axis", vec3_to_json(w->u_axis)},
                       {"v_axis", vec3_to_json(w->v_axis)},
                       {"half_u", w->half_u},
                       {"half_v", w->half_v},
                       {"aperture", aperture}});
    }
  }
  j["primitives"] = std::move(prims);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open scene file for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace varibase::io
