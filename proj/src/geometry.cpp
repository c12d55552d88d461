#include "roofkit/geometry.hpp"

#include <algorithm>
#include <cstdlib>

namespace roofkit {

const char* primitive_type_name(PrimitiveType t) {
  switch (t) {
    case PrimitiveType::HorizontalGable: return "h_gable";
    case PrimitiveType::VerticalGable: return "v_gable";
    case PrimitiveType::HorizontalHip: return "h_hip";
    case PrimitiveType::VerticalHip: return "v_hip";
  }
  return "?";
}

PrimitiveType primitive_type_from_name(const std::string& name) {
  if (name == "h_gable") return PrimitiveType::HorizontalGable;
  if (name == "v_gable") return PrimitiveType::VerticalGable;
  if (name == "h_hip") return PrimitiveType::HorizontalHip;
  if (name == "v_hip") return PrimitiveType::VerticalHip;
  throw Error("unknown primitive type \"" + name + "\"");
}

RasterBundle RasterBundle::background(int resolution, double meters_per_pixel) {
  RasterBundle b;
  b.resolution = resolution;
  b.meters_per_pixel = meters_per_pixel;
  b.orientation[kChannelLR] = Image<double>(resolution, 0.0);
  b.orientation[kChannelTB] = Image<double>(resolution, 0.0);
  b.orientation[kChannelBG] = Image<double>(resolution, 1.0);
  b.angle = Image<double>(resolution, 0.0);
  b.height = Image<double>(resolution, 0.0);
  b.labels = Image<int>(resolution, -1);
  return b;
}

const char* symmetry_op_name(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::Identity: return "identity";
    case SymmetryOp::Rot90: return "rot90";
    case SymmetryOp::Rot180: return "rot180";
    case SymmetryOp::Rot270: return "rot270";
    case SymmetryOp::MirrorX: return "mirror_x";
    case SymmetryOp::MirrorY: return "mirror_y";
    case SymmetryOp::Transpose: return "transpose";
    case SymmetryOp::AntiTranspose: return "anti_transpose";
  }
  return "?";
}

namespace {

// Each op as x' = ax + by + e*R, y' = cx + dy + f*R.
struct LinearMap {
  int a, b, c, d, e, f;
};

LinearMap map_of(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::Identity: return {1, 0, 0, 1, 0, 0};
    case SymmetryOp::Rot90: return {0, -1, 1, 0, 1, 0};   // (x,y) -> (R-y, x)
    case SymmetryOp::Rot180: return {-1, 0, 0, -1, 1, 1};
    case SymmetryOp::Rot270: return {0, 1, -1, 0, 0, 1};  // (x,y) -> (y, R-x)
    case SymmetryOp::MirrorX: return {-1, 0, 0, 1, 1, 0};
    case SymmetryOp::MirrorY: return {1, 0, 0, -1, 0, 1};
    case SymmetryOp::Transpose: return {0, 1, 1, 0, 0, 0};
    case SymmetryOp::AntiTranspose: return {0, -1, -1, 0, 1, 1};
  }
  return {1, 0, 0, 1, 0, 0};
}

bool swaps_axes(SymmetryOp op) { return map_of(op).a == 0; }

}  // namespace

Vec2 apply_symmetry(SymmetryOp op, Vec2 p, double extent) {
  const LinearMap m = map_of(op);
  return {m.a * p.x + m.b * p.y + m.e * extent, m.c * p.x + m.d * p.y + m.f * extent};
}

SymmetryOp compose(SymmetryOp a, SymmetryOp b) {
  const LinearMap ma = map_of(a);
  const LinearMap mb = map_of(b);
  // b applied after a.
  const LinearMap mc = {
      mb.a * ma.a + mb.b * ma.c,          mb.a * ma.b + mb.b * ma.d,
      mb.c * ma.a + mb.d * ma.c,          mb.c * ma.b + mb.d * ma.d,
      mb.a * ma.e + mb.b * ma.f + mb.e,   mb.c * ma.e + mb.d * ma.f + mb.f,
  };
  for (SymmetryOp op : kAllSymmetryOps) {
    const LinearMap m = map_of(op);
    if (m.a == mc.a && m.b == mc.b && m.c == mc.c && m.d == mc.d && m.e == mc.e &&
        m.f == mc.f) {
      return op;
    }
  }
  throw Error("symmetry composition fell outside the group");  // unreachable
}

Side transform_side(SymmetryOp op, Side s) {
  // Track where the midpoint-offset of the owning boundary goes.
  Vec2 dir;
  switch (s) {
    case Side::Top: dir = {0, -1}; break;
    case Side::Bottom: dir = {0, 1}; break;
    case Side::Left: dir = {-1, 0}; break;
    case Side::Right: dir = {1, 0}; break;
  }
  const LinearMap m = map_of(op);
  const Vec2 out{m.a * dir.x + m.b * dir.y, m.c * dir.x + m.d * dir.y};
  if (out.x < 0) return Side::Left;
  if (out.x > 0) return Side::Right;
  return out.y < 0 ? Side::Top : Side::Bottom;
}

const RoofGraph& validate_graph(const RoofGraph& graph) {
  if (graph.resolution <= 0) throw Error("resolution must be positive");
  if (!(graph.meters_per_pixel > 0.0)) throw Error("meters_per_pixel must be positive");
  for (std::size_t i = 0; i < graph.primitives.size(); ++i) {
    const RoofPrimitive& p = graph.primitives[i];
    const std::string where = "primitive " + std::to_string(i) + ": ";
    if (!(p.box.left < p.box.right) || !(p.box.top < p.box.bottom)) {
      throw Error(where + "degenerate rectangle");
    }
    for (double a : {p.angle_lr, p.angle_tb}) {
      if (!(a >= 0.0 && a < kPi / 2.0)) throw Error(where + "angle out of range [0, pi/2)");
    }
  }
  const int n = static_cast<int>(graph.primitives.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto it = graph.relations.find({i, j});
      if (it == graph.relations.end()) {
        throw Error("incomplete relation map: missing pair (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
      }
      for (double v : it->second.as_array()) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw Error("relation (" + std::to_string(i) + "," + std::to_string(j) +
                      "): probability out of range");
        }
      }
    }
  }
  for (const auto& [key, unused] : graph.relations) {
    if (key.first < 0 || key.second >= n || key.first >= key.second) {
      throw Error("relation map contains an invalid pair");
    }
  }
  return graph;
}

RoofGraph transform_graph(const RoofGraph& graph, SymmetryOp op) {
  const double extent = static_cast<double>(graph.resolution);
  RoofGraph out = graph;
  for (RoofPrimitive& p : out.primitives) {
    const Vec2 c0 = apply_symmetry(op, {p.box.left, p.box.top}, extent);
    const Vec2 c1 = apply_symmetry(op, {p.box.right, p.box.bottom}, extent);
    p.box = {std::min(c0.x, c1.x), std::min(c0.y, c1.y), std::max(c0.x, c1.x),
             std::max(c0.y, c1.y)};
    if (swaps_axes(op)) {
      std::swap(p.angle_lr, p.angle_tb);
      switch (p.type) {
        case PrimitiveType::HorizontalGable: p.type = PrimitiveType::VerticalGable; break;
        case PrimitiveType::VerticalGable: p.type = PrimitiveType::HorizontalGable; break;
        case PrimitiveType::HorizontalHip: p.type = PrimitiveType::VerticalHip; break;
        case PrimitiveType::VerticalHip: p.type = PrimitiveType::HorizontalHip; break;
      }
    }
  }
  for (auto& [key, rel] : out.relations) {
    RelationVector src = rel;
    RelationVector dst = src;
    for (Side s : kAllSides) dst.colinear(transform_side(op, s)) = src.colinear(s);
    if (swaps_axes(op)) std::swap(dst.parallel_lr, dst.parallel_tb);
    rel = dst;
  }
  return out;
}

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d1 = cross2(a, b, p);
  const double d2 = cross2(b, c, p);
  const double d3 = cross2(c, a, p);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

}  // namespace

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& polygon) {
  const int n = static_cast<int>(polygon.size());
  if (n < 3) throw Error("ear_clip: polygon needs at least 3 vertices");

  double area2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % n];
    area2 += p.x * q.y - q.x * p.y;
  }

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (area2 < 0) std::reverse(idx.begin(), idx.end());  // force CCW order

  std::vector<std::array<int, 3>> tris;
  tris.reserve(n - 2);
  int guard = 0;
  while (idx.size() > 3) {
    const int m = static_cast<int>(idx.size());
    bool clipped = false;
    for (int i = 0; i < m; ++i) {
      const int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      const Vec2 &a = polygon[ia], &b = polygon[ib], &c = polygon[ic];
      if (cross2(a, b, c) <= 0) continue;  // reflex or collinear corner
      bool contains_other = false;
      for (int j = 0; j < m && !contains_other; ++j) {
        const int iv = idx[j];
        if (iv == ia || iv == ib || iv == ic) continue;
        contains_other = point_in_triangle(polygon[iv], a, b, c);
      }
      if (contains_other) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) {
      // Degenerate input (collinear runs); drop the flattest corner and retry.
      if (++guard > n) throw Error("ear_clip: failed to triangulate polygon");
      double best = std::abs(cross2(polygon[idx[m - 1]], polygon[idx[0]], polygon[idx[1]]));
      int best_i = 0;
      for (int i = 1; i < m; ++i) {
        const double c = std::abs(
            cross2(polygon[idx[(i + m - 1) % m]], polygon[idx[i]], polygon[idx[(i + 1) % m]]));
        if (c < best) {
          best = c;
          best_i = i;
        }
      }
      idx.erase(idx.begin() + best_i);
    }
  }
  if (idx.size() == 3) tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

}  // namespace roofkit
