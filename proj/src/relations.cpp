#include "roofkit/relations.hpp"

#include <algorithm>
#include <cmath>

namespace roofkit {

RelationVector detect_relations(const RoofPrimitive& a, const RoofPrimitive& b, double tol_px,
                                double tol_deg) {
  RelationVector rel;
  for (Side s : kAllSides) {
    rel.colinear(s) = std::abs(a.box.side(s) - b.box.side(s)) <= tol_px ? 1.0 : 0.0;
  }
  const double tol_rad = deg_to_rad(tol_deg);
  if (has_lr_facets(a.type) && has_lr_facets(b.type)) {
    rel.parallel_lr = std::abs(a.angle_lr - b.angle_lr) <= tol_rad ? 1.0 : 0.0;
  }
  if (has_tb_facets(a.type) && has_tb_facets(b.type)) {
    rel.parallel_tb = std::abs(a.angle_tb - b.angle_tb) <= tol_rad ? 1.0 : 0.0;
  }
  return rel;
}

RelationMap detect_all_relations(const std::vector<RoofPrimitive>& primitives, double tol_px,
                                 double tol_deg) {
  RelationMap map;
  const int n = static_cast<int>(primitives.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      map[{i, j}] = detect_relations(primitives[i], primitives[j], tol_px, tol_deg);
    }
  }
  return map;
}

RoofGraph snap_ground_truth(const RoofGraph& graph) {
  RoofGraph out = graph;
  for (const auto& [pair, rel] : out.relations) {  // map iterates (i, j) ascending
    const auto [i, j] = pair;
    RoofPrimitive& lo = out.primitives[i];
    RoofPrimitive& hi = out.primitives[j];
    for (Side s : kAllSides) {
      if (rel.colinear(s) > 0.5) hi.box.side(s) = lo.box.side(s);
    }
    if (rel.parallel_lr > 0.5 && has_lr_facets(lo.type) && has_lr_facets(hi.type)) {
      hi.angle_lr = lo.angle_lr;
    }
    if (rel.parallel_tb > 0.5 && has_tb_facets(lo.type) && has_tb_facets(hi.type)) {
      hi.angle_tb = lo.angle_tb;
    }
  }
  return out;
}

std::vector<Box> enforce_colinearity(const std::vector<Box>& boxes,
                                     const RelationMap& relations, int iterations) {
  if (iterations < 1) throw Error("enforce_colinearity: iterations must be >= 1");
  std::vector<Box> current = boxes;
  const int n = static_cast<int>(boxes.size());
  for (int pass = 0; pass < iterations; ++pass) {
    std::vector<Box> next = current;
    for (int i = 0; i < n; ++i) {
      for (Side s : kAllSides) {
        double weight_sum = 1.0;
        double value = current[i].side(s);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const auto it = relations.find(make_pair_key(i, j));
          if (it == relations.end()) continue;
          const double w = enforcement_weight(it->second.colinear(s));
          if (w <= 0.0) continue;
          weight_sum += w;
          value += w * current[j].side(s);
        }
        next[i].side(s) = value / weight_sum;
      }
    }
    current = std::move(next);
  }
  return current;
}

RectTransform rect_transform(const Box& original, const Box& adjusted) {
  if (!(original.width() > 0.0) || !(original.height() > 0.0)) {
    throw Error("rect_transform: degenerate original box");
  }
  if (!(adjusted.width() > 0.0) || !(adjusted.height() > 0.0)) {
    throw Error("rect_transform: degenerate adjusted box");
  }
  RectTransform t;
  t.scale_x = adjusted.width() / original.width();
  t.scale_y = adjusted.height() / original.height();
  t.translate_x = adjusted.left - t.scale_x * original.left;
  t.translate_y = adjusted.top - t.scale_y * original.top;
  return t;
}

namespace {

struct BilinearSample {
  int i0, j0;
  double fx, fy;  // weights toward (i0+1, j0+1)
};

BilinearSample locate(double sx, double sy) {
  const double u = sx - 0.5;
  const double v = sy - 0.5;
  const double fi = std::floor(u);
  const double fj = std::floor(v);
  return {static_cast<int>(fi), static_cast<int>(fj), u - fi, v - fj};
}

double sample_channel(const Image<double>& img, const BilinearSample& s, double background) {
  auto value = [&](int x, int y) {
    return img.in_bounds(x, y) ? img.at(x, y) : background;
  };
  const double top = (1.0 - s.fx) * value(s.i0, s.j0) + s.fx * value(s.i0 + 1, s.j0);
  const double bot = (1.0 - s.fx) * value(s.i0, s.j0 + 1) + s.fx * value(s.i0 + 1, s.j0 + 1);
  return (1.0 - s.fy) * top + s.fy * bot;
}

}  // namespace

RasterBundle warp_bundle(const RasterBundle& bundle, const RectTransform& t) {
  if (!(t.scale_x > 0.0) || !(t.scale_y > 0.0)) throw Error("warp_bundle: invalid transform");
  const int n = bundle.resolution;
  RasterBundle out = RasterBundle::background(n, bundle.meters_per_pixel);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 src = t.invert({i + 0.5, j + 0.5});
      const BilinearSample s = locate(src.x, src.y);

      double lr = sample_channel(bundle.orientation[kChannelLR], s, 0.0);
      double tb = sample_channel(bundle.orientation[kChannelTB], s, 0.0);
      double bg = sample_channel(bundle.orientation[kChannelBG], s, 1.0);
      const double sum = lr + tb + bg;
      if (sum > 0.0) {
        lr /= sum;
        tb /= sum;
        bg /= sum;
      } else {
        lr = tb = 0.0;
        bg = 1.0;
      }
      out.orientation[kChannelLR].at(i, j) = lr;
      out.orientation[kChannelTB].at(i, j) = tb;
      out.orientation[kChannelBG].at(i, j) = bg;
      out.angle.at(i, j) = sample_channel(bundle.angle, s, 0.0);
      out.height.at(i, j) = sample_channel(bundle.height, s, 0.0);

      const int ni = static_cast<int>(std::lround(src.x - 0.5));
      const int nj = static_cast<int>(std::lround(src.y - 0.5));
      out.labels.at(i, j) = bundle.labels.in_bounds(ni, nj) ? bundle.labels.at(ni, nj) : -1;
    }
  }
  return out;
}

EnforceResult enforce_graph(const RoofGraph& graph, const std::vector<RasterBundle>& bundles,
                            EnforceMode mode, double wall_height, int iterations) {
  if (bundles.size() != graph.primitives.size()) {
    throw Error("enforce_graph: bundle count does not match primitive count");
  }
  std::vector<Box> boxes;
  boxes.reserve(graph.primitives.size());
  for (const RoofPrimitive& p : graph.primitives) boxes.push_back(p.box);
  const std::vector<Box> adjusted = enforce_colinearity(boxes, graph.relations, iterations);

  EnforceResult result;
  result.graph = graph;
  for (std::size_t k = 0; k < adjusted.size(); ++k) {
    result.graph.primitives[k].box = adjusted[k];
  }
  result.bundles.reserve(bundles.size());
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    if (mode == EnforceMode::Bilinear) {
      result.bundles.push_back(warp_bundle(bundles[k], rect_transform(boxes[k], adjusted[k])));
    } else {
      result.bundles.push_back(rasterize_primitive(result.graph.primitives[k],
                                                   bundles[k].resolution, wall_height,
                                                   bundles[k].meters_per_pixel));
    }
  }
  return result;
}

}  // namespace roofkit
