#include "roofkit/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "roofkit/relations.hpp"

namespace roofkit {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed + index * odd constant
  std::uint64_t z = seed + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int sample_count(Rng& rng, const SamplerConfig& config) {
  return 2 + rng.discrete(config.count_distribution);
}

namespace {

constexpr double kHipRatioMin = 0.15;  // minority-facet share stays above 5%
constexpr double kHipRatioMax = 0.85;  // dominant pair keeps a clear majority

void check_config(const SamplerConfig& c) {
  double sum = 0.0;
  for (double p : c.count_distribution) {
    if (p < 0.0) throw Error("sampler config: negative count probability");
    sum += p;
  }
  if (c.count_distribution.size() != 4 || std::abs(sum - 1.0) > 1e-9) {
    throw Error("sampler config: count_distribution must be 4 probabilities summing to 1");
  }
  if (!(c.angle_min > 0.0 && c.angle_max < kPi / 2.0 && c.angle_min < c.angle_max)) {
    throw Error("sampler config: angle range must lie inside (0, pi/2)");
  }
  if (c.min_box_side < 2 || c.min_box_side > c.resolution / 2) {
    throw Error("sampler config: min_box_side out of range");
  }
}

// Triangle-to-box area ratio of a hip's minority facets, times two.
double hip_ratio(const RoofPrimitive& p) {
  const double w = p.box.width();
  const double d = p.box.height();
  if (p.type == PrimitiveType::HorizontalHip) {
    return std::tan(p.angle_tb) * d / (std::tan(p.angle_lr) * w);
  }
  return std::tan(p.angle_lr) * w / (std::tan(p.angle_tb) * d);
}

bool hip_margin_ok(const RoofPrimitive& p) {
  if (!is_hip(p.type)) return true;
  const double rho = hip_ratio(p);
  return rho >= kHipRatioMin && rho <= kHipRatioMax;
}

bool overlaps(const Box& a, const Box& b) {
  return a.left < b.right && b.left < a.right && a.top < b.bottom && b.top < a.bottom;
}

bool box_ok(const Box& b, const SamplerConfig& c) {
  return b.left >= 0 && b.top >= 0 && b.right <= c.resolution && b.bottom <= c.resolution &&
         b.width() >= c.min_box_side && b.height() >= c.min_box_side;
}

Box draw_box(Rng& rng, const SamplerConfig& c) {
  const int lo = 0, hi = c.resolution;
  const int l = rng.uniform_int(lo, hi - c.min_box_side);
  const int r = rng.uniform_int(l + c.min_box_side, hi);
  const int t = rng.uniform_int(lo, hi - c.min_box_side);
  const int b = rng.uniform_int(t + c.min_box_side, hi);
  return {static_cast<double>(l), static_cast<double>(t), static_cast<double>(r),
          static_cast<double>(b)};
}

bool try_place(Rng& rng, const SamplerConfig& c, const std::vector<RoofPrimitive>& placed,
               PrimitiveType type, Box& out) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Box box = draw_box(rng, c);
    if (is_hip(type)) {  // keep the dominant pair along the long axis
      const bool wants_wide = (type == PrimitiveType::HorizontalHip);
      if (wants_wide != (box.width() >= box.height())) continue;
    }
    // Boundary snapping creates ground-truth colinearities.
    if (!placed.empty()) {
      for (Side s : kAllSides) {
        if (!rng.coin(c.snap_probability)) continue;
        const int j = rng.uniform_int(0, static_cast<int>(placed.size()) - 1);
        Box snapped = box;
        snapped.side(s) = placed[j].box.side(s);
        if (box_ok(snapped, c)) box = snapped;
      }
    }
    if (!box_ok(box, c)) continue;
    if (c.overlap_policy == OverlapPolicy::RequireOverlap && !placed.empty()) {
      const bool touches = std::any_of(placed.begin(), placed.end(),
                                       [&](const RoofPrimitive& p) { return overlaps(box, p.box); });
      if (!touches) continue;
    }
    out = box;
    return true;
  }
  return false;
}

double draw_angle(Rng& rng, const SamplerConfig& c, const std::vector<double>& candidates) {
  if (!candidates.empty() && rng.coin(c.snap_probability)) {
    return candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];
  }
  return rng.uniform(c.angle_min, c.angle_max);
}

bool try_build(Rng& rng, const SamplerConfig& config, RoofGraph& out) {
  const int n = sample_count(rng, config);
  std::vector<RoofPrimitive> prims;
  prims.reserve(n);
  for (int k = 0; k < n; ++k) {
    RoofPrimitive prim;
    prim.type = static_cast<PrimitiveType>(rng.uniform_int(0, 3));
    if (!try_place(rng, config, prims, prim.type, prim.box)) return false;

    std::vector<double> lr_candidates, tb_candidates;
    for (const RoofPrimitive& p : prims) {
      if (has_lr_facets(p.type)) lr_candidates.push_back(p.angle_lr);
      if (has_tb_facets(p.type)) tb_candidates.push_back(p.angle_tb);
    }
    bool angles_ok = false;
    for (int attempt = 0; attempt < 64 && !angles_ok; ++attempt) {
      prim.angle_lr = has_lr_facets(prim.type) ? draw_angle(rng, config, lr_candidates) : 0.0;
      prim.angle_tb = has_tb_facets(prim.type) ? draw_angle(rng, config, tb_candidates) : 0.0;
      angles_ok = hip_margin_ok(prim);
    }
    if (!angles_ok) return false;
    prims.push_back(prim);
  }

  RoofGraph graph;
  graph.resolution = config.resolution;
  graph.meters_per_pixel = config.meters_per_pixel;
  graph.primitives = std::move(prims);
  graph.relations = detect_all_relations(graph.primitives);
  graph = snap_ground_truth(graph);
  // Snapping moves boundaries/angles by up to one tolerance; re-check hips.
  for (const RoofPrimitive& p : graph.primitives) {
    if (!hip_margin_ok(p)) return false;
  }
  // Emit relations that reproduce exactly, including coincidental equalities.
  graph.relations = detect_all_relations(graph.primitives, 0.0, 0.0);
  validate_graph(graph);
  out = std::move(graph);
  return true;
}

}  // namespace

RoofGraph sample_graph(Rng& rng, const SamplerConfig& config) {
  check_config(config);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RoofGraph graph;
    if (try_build(rng, config, graph)) return graph;
  }
  throw Error("sample_graph: placement failed after 64 attempts; the rng state came from the "
              "configured seed, so rerun with a different seed or a looser config");
}

}  // namespace roofkit
