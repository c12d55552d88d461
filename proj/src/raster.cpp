#include "roofkit/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace roofkit {

double FacetPlane::height_at(double x, double y) const {
  double dist_px = 0.0;
  switch (side) {
    case Side::Top: dist_px = y - support.top; break;
    case Side::Bottom: dist_px = support.bottom - y; break;
    case Side::Left: dist_px = x - support.left; break;
    case Side::Right: dist_px = support.right - x; break;
  }
  return wall_height + std::tan(angle) * meters_per_pixel * dist_px;
}

std::vector<FacetPlane> facet_planes(const RoofPrimitive& p, double wall_height,
                                     double meters_per_pixel, int primitive_index) {
  std::vector<FacetPlane> planes;
  // Side order doubles as the lowest-height tie rule: top/bottom first.
  for (Side s : kAllSides) {
    const bool tb = (s == Side::Top || s == Side::Bottom);
    if (tb && !has_tb_facets(p.type)) continue;
    if (!tb && !has_lr_facets(p.type)) continue;
    FacetPlane plane;
    plane.owner_primitive = primitive_index;
    plane.side = s;
    plane.angle = tb ? p.angle_tb : p.angle_lr;
    plane.support = p.box;
    plane.wall_height = wall_height;
    plane.meters_per_pixel = meters_per_pixel;
    planes.push_back(plane);
  }
  return planes;
}

RasterBundle rasterize_primitive(const RoofPrimitive& p, int resolution, double wall_height,
                                 double meters_per_pixel, int primitive_index) {
  const Box& b = p.box;
  if (b.left < 0 || b.top < 0 || b.right > resolution || b.bottom > resolution) {
    throw Error("primitive box outside image");
  }
  if (!(b.left < b.right) || !(b.top < b.bottom)) throw Error("degenerate rectangle");

  RasterBundle out = RasterBundle::background(resolution, meters_per_pixel);
  const auto planes = facet_planes(p, wall_height, meters_per_pixel, primitive_index);

  const int x0 = std::max(0, static_cast<int>(std::floor(b.left - 0.5)));
  const int x1 = std::min(resolution - 1, static_cast<int>(std::ceil(b.right)));
  const int y0 = std::max(0, static_cast<int>(std::floor(b.top - 0.5)));
  const int y1 = std::min(resolution - 1, static_cast<int>(std::ceil(b.bottom)));
  for (int j = y0; j <= y1; ++j) {
    const double cy = j + 0.5;
    if (cy < b.top || cy >= b.bottom) continue;
    for (int i = x0; i <= x1; ++i) {
      const double cx = i + 0.5;
      if (cx < b.left || cx >= b.right) continue;
      const FacetPlane* winner = &planes[0];
      double lowest = planes[0].height_at(cx, cy);
      for (std::size_t k = 1; k < planes.size(); ++k) {
        const double h = planes[k].height_at(cx, cy);
        if (h < lowest) {
          lowest = h;
          winner = &planes[k];
        }
      }
      const bool tb = (winner->side == Side::Top || winner->side == Side::Bottom);
      out.orientation[kChannelLR].at(i, j) = tb ? 0.0 : 1.0;
      out.orientation[kChannelTB].at(i, j) = tb ? 1.0 : 0.0;
      out.orientation[kChannelBG].at(i, j) = 0.0;
      out.angle.at(i, j) = std::cos(winner->angle);
      out.height.at(i, j) = lowest;
      out.labels.at(i, j) = facet_label(primitive_index, winner->side);
    }
  }
  return out;
}

RasterBundle composite_roof(const std::vector<RasterBundle>& bundles) {
  if (bundles.empty()) throw Error("composite_roof: empty bundle list");
  const int res = bundles[0].resolution;
  for (const RasterBundle& b : bundles) {
    if (b.resolution != res) throw Error("composite_roof: mixed resolutions");
  }

  RasterBundle out = RasterBundle::background(res, bundles[0].meters_per_pixel);
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      int best = -1;
      double best_height = 0.0;
      for (std::size_t k = 0; k < bundles.size(); ++k) {
        if (bundles[k].labels.at(i, j) < 0) continue;
        const double h = bundles[k].height.at(i, j);
        if (best < 0 || h > best_height) {  // ties keep the lower index
          best = static_cast<int>(k);
          best_height = h;
        }
      }
      if (best < 0) continue;
      const RasterBundle& w = bundles[best];
      for (int c = 0; c < 3; ++c) out.orientation[c].at(i, j) = w.orientation[c].at(i, j);
      out.angle.at(i, j) = w.angle.at(i, j);
      out.height.at(i, j) = w.height.at(i, j);
      out.labels.at(i, j) = best * 4 + w.labels.at(i, j) % 4;
    }
  }
  return out;
}

RasterBundle rasterize_graph(const RoofGraph& graph, double wall_height) {
  validate_graph(graph);
  std::vector<RasterBundle> bundles;
  bundles.reserve(graph.primitives.size());
  for (const RoofPrimitive& p : graph.primitives) {
    bundles.push_back(
        rasterize_primitive(p, graph.resolution, wall_height, graph.meters_per_pixel));
  }
  return merge_coplanar(composite_roof(bundles), graph);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool facet_exists(PrimitiveType t, Side s) {
  const bool tb = (s == Side::Top || s == Side::Bottom);
  return tb ? has_tb_facets(t) : has_lr_facets(t);
}

}  // namespace

RasterBundle merge_coplanar(const RasterBundle& composite, const RoofGraph& graph) {
  const int n = static_cast<int>(graph.primitives.size());
  UnionFind uf(4 * n);
  for (const auto& [pair, rel] : graph.relations) {
    const auto [i, j] = pair;
    const PrimitiveType ti = graph.primitives[i].type;
    const PrimitiveType tj = graph.primitives[j].type;
    for (Side s : kAllSides) {
      const bool tb = (s == Side::Top || s == Side::Bottom);
      const double parallel = tb ? rel.parallel_tb : rel.parallel_lr;
      if (rel.colinear(s) <= 0.5 || parallel <= 0.5) continue;
      if (!facet_exists(ti, s) || !facet_exists(tj, s)) continue;
      uf.unite(facet_label(i, s), facet_label(j, s));
    }
  }

  // Relabel every component to its smallest member for determinism.
  std::vector<int> remap(4 * n);
  for (int l = 0; l < 4 * n; ++l) remap[l] = l;
  for (int l = 0; l < 4 * n; ++l) {
    const int r = uf.find(l);
    remap[r] = std::min(remap[r], l);
  }

  RasterBundle out = composite;
  for (int& l : out.labels.data) {
    if (l >= 0 && l < 4 * n) l = remap[uf.find(l)];
  }
  return out;
}

std::vector<std::pair<int, int>> trace_outer_contour(const Image<std::uint8_t>& mask) {
  const int n = mask.size;
  int sx = -1, sy = -1;
  for (int j = 0; j < n && sx < 0; ++j) {
    for (int i = 0; i < n; ++i) {
      if (mask.at(i, j)) {
        sx = i;
        sy = j;
        break;
      }
    }
  }
  if (sx < 0) return {};

  // Clockwise Moore neighborhood starting west.
  static constexpr int dx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  static constexpr int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  auto filled = [&](int x, int y) { return mask.in_bounds(x, y) && mask.at(x, y) != 0; };

  std::vector<std::pair<int, int>> chain;
  chain.emplace_back(sx, sy);
  int px = sx, py = sy;
  int bx = sx - 1, by = sy;  // west neighbor is background: start is topmost-leftmost
  const int bx0 = bx, by0 = by;
  const long max_steps = 4L * n * n + 8;
  for (long step = 0; step < max_steps; ++step) {
    int kb = 0;
    for (int k = 0; k < 8; ++k) {
      if (px + dx[k] == bx && py + dy[k] == by) {
        kb = k;
        break;
      }
    }
    int found = -1;
    int last_bg_x = bx, last_bg_y = by;
    for (int k = 1; k <= 8; ++k) {
      const int d = (kb + k) % 8;
      const int cx = px + dx[d], cy = py + dy[d];
      if (filled(cx, cy)) {
        found = d;
        break;
      }
      last_bg_x = cx;
      last_bg_y = cy;
    }
    if (found < 0) break;  // isolated pixel
    bx = last_bg_x;
    by = last_bg_y;
    px += dx[found];
    py += dy[found];
    // Jacob's stopping criterion: re-entered the start in the initial state.
    if (px == sx && py == sy && bx == bx0 && by == by0) break;
    chain.emplace_back(px, py);
  }
  while (chain.size() > 1 && chain.back() == chain.front()) chain.pop_back();
  return chain;
}

namespace {

struct IPoint {
  int x, y;
  bool operator==(const IPoint&) const = default;
};

std::vector<IPoint> simplify_chain(const std::vector<std::pair<int, int>>& raw) {
  std::vector<IPoint> pts;
  for (auto [x, y] : raw) {
    if (pts.empty() || !(pts.back() == IPoint{x, y})) pts.push_back({x, y});
  }
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  if (pts.size() < 3) return pts;

  // Drop points interior to a straight same-direction run (CHAIN_APPROX_SIMPLE).
  std::vector<IPoint> out;
  const int m = static_cast<int>(pts.size());
  for (int i = 0; i < m; ++i) {
    const IPoint& a = pts[(i + m - 1) % m];
    const IPoint& b = pts[i];
    const IPoint& c = pts[(i + 1) % m];
    const long ux = b.x - a.x, uy = b.y - a.y;
    const long vx = c.x - b.x, vy = c.y - b.y;
    const bool collinear_forward = (ux * vy - uy * vx) == 0 && (ux * vx + uy * vy) > 0;
    if (!collinear_forward) out.push_back(b);
  }
  return out;
}

std::vector<IPoint> rectilinear_corners(const std::vector<IPoint>& chain) {
  const int m = static_cast<int>(chain.size());
  if (m < 2) return {};
  std::vector<IPoint> corners;
  auto axis_aligned = [](const IPoint& a, const IPoint& b) {
    return (a.x == b.x) != (a.y == b.y);
  };
  for (int i = 0; i < m; ++i) {
    const IPoint& prev = chain[(i + m - 1) % m];
    const IPoint& cur = chain[i];
    const IPoint& next = chain[(i + 1) % m];
    if (axis_aligned(prev, cur) || axis_aligned(cur, next)) corners.push_back(cur);
  }
  return corners;
}

std::vector<std::vector<std::pair<int, int>>> connected_components(
    const Image<std::uint8_t>& mask) {
  const int n = mask.size;
  Image<std::uint8_t> seen(n, 0);
  std::vector<std::vector<std::pair<int, int>>> comps;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!mask.at(i, j) || seen.at(i, j)) continue;
      std::vector<std::pair<int, int>> comp;
      std::vector<std::pair<int, int>> stack{{i, j}};
      seen.at(i, j) = 1;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        comp.emplace_back(x, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if ((dx || dy) && mask.in_bounds(nx, ny) && mask.at(nx, ny) && !seen.at(nx, ny)) {
              seen.at(nx, ny) = 1;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
      comps.push_back(std::move(comp));
    }
  }
  return comps;
}

}  // namespace

RoofModel extract_facet_polygons(const RasterBundle& composite, int dimensionality) {
  if (dimensionality != 2 && dimensionality != 3) {
    throw Error("dimensionality must be 2 or 3");
  }
  const int n = composite.resolution;
  std::vector<int> labels;
  for (int l : composite.labels.data) {
    if (l >= 0) labels.push_back(l);
  }
  if (labels.empty()) throw Error("empty composite: no foreground pixels");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  const double mpp = composite.meters_per_pixel;
  RoofModel model;
  model.dim = dimensionality;
  for (int label : labels) {
    Image<std::uint8_t> mask(n, 0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        mask.at(i, j) = composite.labels.at(i, j) == label ? 1 : 0;
      }
    }
    for (const auto& comp : connected_components(mask)) {
      Image<std::uint8_t> comp_mask(n, 0);
      for (auto [x, y] : comp) comp_mask.at(x, y) = 1;
      const auto chain = simplify_chain(trace_outer_contour(comp_mask));
      const auto corners = rectilinear_corners(chain);
      if (corners.size() < 3) {
        std::fprintf(stderr, "warning: facet label %d dropped (%zu corners)\n", label,
                     corners.size());
        continue;
      }
      Facet facet;
      facet.plane_angle = std::acos(std::clamp(composite.angle.at(comp[0].first, comp[0].second),
                                               0.0, 1.0));
      for (const IPoint& c : corners) {
        double z = 0.0;
        if (dimensionality == 3) z = composite.height.at(c.x, c.y);
        facet.vertices.push_back({c.x * mpp, c.y * mpp, z});
      }
      model.facets.push_back(std::move(facet));
    }
  }
  if (model.facets.empty()) throw Error("no facet produced at least 3 corners");
  return model;
}

RgbImage render_normal_map(const RasterBundle& composite) {
  const int n = composite.resolution;
  RgbImage img;
  img.size = n;
  img.pixels.assign(static_cast<std::size_t>(n) * n, {255, 255, 255});
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int label = composite.labels.at(i, j);
      if (label < 0) continue;
      const double c = std::clamp(composite.angle.at(i, j), 0.0, 1.0);
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      double nx = 0.0, ny = 0.0;
      switch (static_cast<Side>(label % 4)) {
        case Side::Top: ny = -s; break;
        case Side::Bottom: ny = s; break;
        case Side::Left: nx = -s; break;
        case Side::Right: nx = s; break;
      }
      auto to_byte = [](double v) {
        return static_cast<std::uint8_t>(std::lround(255.0 * (v + 1.0) / 2.0));
      };
      img.at(i, j) = {to_byte(nx), to_byte(ny), to_byte(c)};
    }
  }
  return img;
}

RasterBundle transform_raster(const RasterBundle& bundle, SymmetryOp op) {
  const int n = bundle.resolution;
  RasterBundle out = RasterBundle::background(n, bundle.meters_per_pixel);
  const bool swap = transform_side(op, Side::Left) == Side::Top ||
                    transform_side(op, Side::Left) == Side::Bottom;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 c = apply_symmetry(op, {i + 0.5, j + 0.5}, static_cast<double>(n));
      const int ni = static_cast<int>(std::floor(c.x));
      const int nj = static_cast<int>(std::floor(c.y));
      const int src_lr = swap ? kChannelTB : kChannelLR;
      const int src_tb = swap ? kChannelLR : kChannelTB;
      out.orientation[kChannelLR].at(ni, nj) = bundle.orientation[src_lr].at(i, j);
      out.orientation[kChannelTB].at(ni, nj) = bundle.orientation[src_tb].at(i, j);
      out.orientation[kChannelBG].at(ni, nj) = bundle.orientation[kChannelBG].at(i, j);
      out.angle.at(ni, nj) = bundle.angle.at(i, j);
      out.height.at(ni, nj) = bundle.height.at(i, j);
      const int label = bundle.labels.at(i, j);
      out.labels.at(ni, nj) =
          label < 0 ? -1
                    : (label / 4) * 4 +
                          static_cast<int>(transform_side(op, static_cast<Side>(label % 4)));
    }
  }
  return out;
}

}  // namespace roofkit
