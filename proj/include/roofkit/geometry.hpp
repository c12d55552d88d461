#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace roofkit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Vec3&) const = default;
};

// Square single-channel image, row-major, pixel (x, y) at data[y*size + x].
// Image convention throughout: x grows rightward, y grows downward.
template <typename T>
struct Image {
  int size = 0;
  std::vector<T> data;

  Image() = default;
  explicit Image(int n, T fill = T{}) : size(n), data(static_cast<std::size_t>(n) * n, fill) {}

  T& at(int x, int y) { return data[static_cast<std::size_t>(y) * size + x]; }
  const T& at(int x, int y) const { return data[static_cast<std::size_t>(y) * size + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < size && y >= 0 && y < size; }

  bool operator==(const Image&) const = default;
};

enum class Side : int { Top = 0, Bottom = 1, Left = 2, Right = 3 };

inline constexpr std::array<Side, 4> kAllSides = {Side::Top, Side::Bottom, Side::Left,
                                                  Side::Right};

inline const char* side_name(Side s) {
  switch (s) {
    case Side::Top: return "top";
    case Side::Bottom: return "bottom";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}

enum class PrimitiveType : int {
  HorizontalGable = 0,
  VerticalGable = 1,
  HorizontalHip = 2,
  VerticalHip = 3,
};

inline bool is_hip(PrimitiveType t) {
  return t == PrimitiveType::HorizontalHip || t == PrimitiveType::VerticalHip;
}
inline bool is_horizontal(PrimitiveType t) {
  return t == PrimitiveType::HorizontalGable || t == PrimitiveType::HorizontalHip;
}
// Gables have a single facet pair; hips have both.
inline bool has_lr_facets(PrimitiveType t) { return t != PrimitiveType::HorizontalGable; }
inline bool has_tb_facets(PrimitiveType t) { return t != PrimitiveType::VerticalGable; }

const char* primitive_type_name(PrimitiveType t);
PrimitiveType primitive_type_from_name(const std::string& name);

// Axis-aligned box in continuous pixel coordinates; top is the smaller y.
struct Box {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  double width() const { return right - left; }
  double height() const { return bottom - top; }

  double side(Side s) const {
    switch (s) {
      case Side::Top: return top;
      case Side::Bottom: return bottom;
      case Side::Left: return left;
      case Side::Right: return right;
    }
    return 0.0;
  }
  double& side(Side s) {
    switch (s) {
      case Side::Top: return top;
      case Side::Bottom: return bottom;
      case Side::Left: return left;
      default: return right;
    }
  }

  bool operator==(const Box&) const = default;
};

// One rectangular roof block: box footprint, top covering type, and the two
// facet angles (radians in [0, pi/2), symmetric within each facet pair).
struct RoofPrimitive {
  Box box;
  PrimitiveType type = PrimitiveType::HorizontalGable;
  double angle_lr = 0.0;
  double angle_tb = 0.0;

  bool operator==(const RoofPrimitive&) const = default;
};

// Six pairwise relationship probabilities; ground truth is exactly 0 or 1.
struct RelationVector {
  double colinear_left = 0.0;
  double colinear_right = 0.0;
  double colinear_top = 0.0;
  double colinear_bottom = 0.0;
  double parallel_lr = 0.0;
  double parallel_tb = 0.0;

  double colinear(Side s) const {
    switch (s) {
      case Side::Top: return colinear_top;
      case Side::Bottom: return colinear_bottom;
      case Side::Left: return colinear_left;
      case Side::Right: return colinear_right;
    }
    return 0.0;
  }
  double& colinear(Side s) {
    switch (s) {
      case Side::Top: return colinear_top;
      case Side::Bottom: return colinear_bottom;
      case Side::Left: return colinear_left;
      default: return colinear_right;
    }
  }

  std::array<double, 6> as_array() const {
    return {colinear_left, colinear_right, colinear_top, colinear_bottom, parallel_lr,
            parallel_tb};
  }
  static RelationVector from_array(const std::array<double, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }

  bool operator==(const RelationVector&) const = default;
};

using PairKey = std::pair<int, int>;  // normalized so first < second
using RelationMap = std::map<PairKey, RelationVector>;

inline PairKey make_pair_key(int i, int j) {
  return i < j ? PairKey{i, j} : PairKey{j, i};
}

// Complete graph of primitives with one RelationVector per unordered pair.
struct RoofGraph {
  std::vector<RoofPrimitive> primitives;
  RelationMap relations;
  int resolution = 32;
  double meters_per_pixel = 0.5;

  bool operator==(const RoofGraph&) const = default;
};

// Orientation channel indices: facet probability image channels.
inline constexpr int kChannelLR = 0;
inline constexpr int kChannelTB = 1;
inline constexpr int kChannelBG = 2;

// 4-channel raster geometry plus per-pixel facet instance labels.
struct RasterBundle {
  int resolution = 0;
  double meters_per_pixel = 0.5;
  std::array<Image<double>, 3> orientation;  // lr / tb / background, sums to 1
  Image<double> angle;                       // cos(facet angle), 0 at background
  Image<double> height;                      // meters, 0 at background
  Image<int> labels;                         // facet instance id, -1 at background

  static RasterBundle background(int resolution, double meters_per_pixel);

  bool operator==(const RasterBundle&) const = default;
};

// One polygonal roof facet; vertices in meters, z unused in 2D mode.
struct Facet {
  std::vector<Vec3> vertices;
  double plane_angle = 0.0;

  bool operator==(const Facet&) const = default;
};

struct RoofModel {
  std::vector<Facet> facets;
  int dim = 2;  // 2 = nadir polygons, 3 = with heights

  bool operator==(const RoofModel&) const = default;
};

// The eight symmetry ops used for data augmentation: rotations by multiples
// of 90 degrees and their mirrored versions (the dihedral group of the square).
enum class SymmetryOp : int {
  Identity = 0,
  Rot90 = 1,  // 90 degrees clockwise in image coordinates
  Rot180 = 2,
  Rot270 = 3,
  MirrorX = 4,        // left <-> right
  MirrorY = 5,        // top <-> bottom
  Transpose = 6,      // mirror across the main diagonal
  AntiTranspose = 7,  // mirror across the anti-diagonal
};

inline constexpr std::array<SymmetryOp, 8> kAllSymmetryOps = {
    SymmetryOp::Identity, SymmetryOp::Rot90,     SymmetryOp::Rot180,
    SymmetryOp::Rot270,   SymmetryOp::MirrorX,   SymmetryOp::MirrorY,
    SymmetryOp::Transpose, SymmetryOp::AntiTranspose,
};

const char* symmetry_op_name(SymmetryOp op);

// compose(a, b): the op equivalent to applying a first, then b.
SymmetryOp compose(SymmetryOp a, SymmetryOp b);

// Maps a continuous point in the [0, extent]^2 frame.
Vec2 apply_symmetry(SymmetryOp op, Vec2 p, double extent);

// Where a facet's owning boundary ends up under the op.
Side transform_side(SymmetryOp op, Side s);

// Throws Error naming the first violated invariant; returns its argument.
const RoofGraph& validate_graph(const RoofGraph& graph);

// Remaps boxes, types, angles, and relation entries consistently under op.
RoofGraph transform_graph(const RoofGraph& graph, SymmetryOp op);

// Ear-clipping triangulation of a simple polygon (either winding).
// Returns index triples into the input vertex list.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& polygon);

}  // namespace roofkit
