#pragma once

#include "roofkit/geometry.hpp"

namespace roofkit {

inline constexpr double kDefaultWallHeight = 3.0;  // meters

// Sloped plane over one rectangle boundary: height rises from the owning
// edge toward the interior with rise/run = tan(angle).
struct FacetPlane {
  int owner_primitive = 0;
  Side side = Side::Top;
  double angle = 0.0;  // radians
  Box support;
  double wall_height = kDefaultWallHeight;
  double meters_per_pixel = 0.5;

  // Height in meters at a continuous pixel coordinate.
  double height_at(double x, double y) const;
};

// Facet instance labels encode owner * 4 + side index so composites stay
// unambiguous; a standalone primitive uses owner 0.
inline int facet_label(int primitive_index, Side side) {
  return primitive_index * 4 + static_cast<int>(side);
}

std::vector<FacetPlane> facet_planes(const RoofPrimitive& p,
                                     double wall_height = kDefaultWallHeight,
                                     double meters_per_pixel = 0.5, int primitive_index = 0);

// Hard 0/1 rasterization at pixel centers; within the box every pixel is
// assigned the facet plane with the lowest height (ties go to the top/bottom
// pair, then by side order).
RasterBundle rasterize_primitive(const RoofPrimitive& p, int resolution,
                                 double wall_height = kDefaultWallHeight,
                                 double meters_per_pixel = 0.5, int primitive_index = 0);

// Height-based visibility compositing: per pixel the highest facet wins,
// ties broken toward the lower primitive index. Labels are remapped to
// facet_label(list_index, side).
RasterBundle composite_roof(const std::vector<RasterBundle>& bundles);

// Convenience: rasterize every primitive of a graph and composite.
RasterBundle rasterize_graph(const RoofGraph& graph,
                             double wall_height = kDefaultWallHeight);

// Relabels facet instances so facets declared colinear + parallel on the
// relevant side share one label (transitively, via connected components).
RasterBundle merge_coplanar(const RasterBundle& composite, const RoofGraph& graph);

// Traces each facet mask's outer contour (Moore neighborhood, collinear runs
// collapsed) and keeps the endpoints of axis-aligned contour segments as
// polygon corners. Facets ending up with fewer than 3 corners are dropped
// with a warning on stderr. Vertices are emitted in meters.
RoofModel extract_facet_polygons(const RasterBundle& composite, int dimensionality = 2);

struct RgbImage {
  int size = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  std::array<std::uint8_t, 3>& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * size + x];
  }
  const std::array<std::uint8_t, 3>& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * size + x];
  }
  bool operator==(const RgbImage&) const = default;
};

// Unit facet normals mapped (n+1)/2 into RGB; background pixels pure white.
RgbImage render_normal_map(const RasterBundle& composite);

// Applies a symmetry op to every channel (orientation channels and label
// side indices are permuted to match). Counterpart of transform_graph.
RasterBundle transform_raster(const RasterBundle& bundle, SymmetryOp op);

// Outer contour of one binary mask as pixel indices; exposed for tests.
std::vector<std::pair<int, int>> trace_outer_contour(const Image<std::uint8_t>& mask);

}  // namespace roofkit
