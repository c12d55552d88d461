#pragma once

#include <optional>

#include "roofkit/geometry.hpp"

namespace roofkit {

// Primitive mask probability: one minus the background probability.
Image<double> mask_from_orientation(const std::array<Image<double>, 3>& orientation);

// Boundary coordinate by ReLU'd backward finite difference and weighted mean.
// The mask is zero-padded, so a box occupying columns [l, r) vectorizes to
// exactly (l, r): the right response sits one past the last interior column.
// Throws if the side produces no response (empty mask).
double boundary_coordinate(const Image<double>& mask, Side side);

// (left, right, top, bottom) via boundary_coordinate on all four sides.
Box vectorize_box(const std::array<Image<double>, 3>& orientation);

struct AngleEstimate {
  std::optional<double> angle_lr;  // radians; absent when the facet pair has
  std::optional<double> angle_tb;  // (numerically) no supporting pixels
};

// Weighted average of the cosine image under each orientation channel,
// followed by arccos. Averaging happens in cosine space.
AngleEstimate vectorize_angles(const std::array<Image<double>, 3>& orientation,
                               const Image<double>& angle);

// Winner-takes-all binarization, then the pixel-count rules: horizontal iff
// top/bottom pixels >= left/right pixels; gable iff the minority share is at
// most 5%. Throws if everything binarizes to background.
PrimitiveType classify_type(const std::array<Image<double>, 3>& orientation);

// Full raster-to-vector conversion; absent angles are reported as 0.
RoofPrimitive vectorize_primitive(const RasterBundle& bundle);

struct SideResponse {
  Side side;
  std::vector<double> response;  // ReLU'd derivative mass per coordinate 0..size
  double coordinate = 0.0;
};

// Per-side derivative-response diagnostics backing the CLI report.
std::vector<SideResponse> boundary_responses(const Image<double>& mask);

}  // namespace roofkit
