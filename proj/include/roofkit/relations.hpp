#pragma once

#include "roofkit/geometry.hpp"
#include "roofkit/raster.hpp"

namespace roofkit {

inline constexpr double kDefaultTolPx = 1.0;
inline constexpr double kDefaultTolDeg = 18.0;

// Colinearity/parallelism detection with the dataset tolerances. Boundary
// semantics are inclusive: a difference of exactly tol fires. Parallelism
// entries require the facet pair to exist on both primitives.
RelationVector detect_relations(const RoofPrimitive& a, const RoofPrimitive& b,
                                double tol_px = kDefaultTolPx,
                                double tol_deg = kDefaultTolDeg);

// Detects every unordered pair of a graph's primitives.
RelationMap detect_all_relations(const std::vector<RoofPrimitive>& primitives,
                                 double tol_px = kDefaultTolPx,
                                 double tol_deg = kDefaultTolDeg);

// For each relation entry above 0.5, overwrites the higher-indexed
// primitive's coordinate/angle with the lower-indexed one. Pairs are
// processed in (i, j) lexicographic order; idempotent.
RoofGraph snap_ground_truth(const RoofGraph& graph);

// Low-probability relationships must not pull: ReLU(2p - 1).
inline double enforcement_weight(double p) { return std::max(2.0 * p - 1.0, 0.0); }

// One simultaneous pass of per-side weighted averaging; `iterations` > 1
// repeats the pass on its own output (fixed-point refinement for exact
// consensus among >2 primitives).
std::vector<Box> enforce_colinearity(const std::vector<Box>& boxes,
                                     const RelationMap& relations, int iterations = 1);

// Non-uniform scale + translation mapping one box's corners onto another's.
struct RectTransform {
  double scale_x = 1.0;
  double scale_y = 1.0;
  double translate_x = 0.0;
  double translate_y = 0.0;

  Vec2 apply(Vec2 p) const {
    return {scale_x * p.x + translate_x, scale_y * p.y + translate_y};
  }
  Vec2 invert(Vec2 p) const {
    return {(p.x - translate_x) / scale_x, (p.y - translate_y) / scale_y};
  }

  bool operator==(const RectTransform&) const = default;
};

RectTransform rect_transform(const Box& original, const Box& adjusted);

// Inverse-mapped bilinear resampling; out-of-range samples take the
// background value. Orientation channels are renormalized to sum 1; labels
// are resampled by nearest neighbor.
RasterBundle warp_bundle(const RasterBundle& bundle, const RectTransform& t);

enum class EnforceMode {
  Bilinear,  // warp the raster images with the rect transforms
  Exact,     // re-rasterize from the adjusted vectors
};

struct EnforceResult {
  RoofGraph graph;                   // adjusted boxes, same types/angles/relations
  std::vector<RasterBundle> bundles; // one per primitive
};

// enforce_colinearity -> rect_transform -> warp (or re-rasterize).
EnforceResult enforce_graph(const RoofGraph& graph, const std::vector<RasterBundle>& bundles,
                            EnforceMode mode, double wall_height = kDefaultWallHeight,
                            int iterations = 1);

}  // namespace roofkit
