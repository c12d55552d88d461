#include "roofkit/vectorize.hpp"

#include <algorithm>
#include <cmath>

namespace roofkit {

Image<double> mask_from_orientation(const std::array<Image<double>, 3>& orientation) {
  Image<double> mask(orientation[kChannelBG].size);
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    mask.data[i] = 1.0 - orientation[kChannelBG].data[i];
  }
  return mask;
}

namespace {

// Derivative response along one axis, zero-padded on both ends, so position k
// covers the difference mask[k] - mask[k-1] for k in [0, size].
std::vector<double> axis_response(const Image<double>& mask, bool along_x, bool negate) {
  const int n = mask.size;
  std::vector<double> response(n + 1, 0.0);
  for (int line = 0; line < n; ++line) {
    double prev = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double cur =
          k < n ? (along_x ? mask.at(k, line) : mask.at(line, k)) : 0.0;
      const double d = negate ? prev - cur : cur - prev;
      if (d > 0.0) response[k] += d;
      prev = cur;
    }
  }
  return response;
}

std::pair<bool, double> weighted_mean(const std::vector<double>& response) {
  double total = 0.0, moment = 0.0;
  for (std::size_t k = 0; k < response.size(); ++k) {
    total += response[k];
    moment += static_cast<double>(k) * response[k];
  }
  if (total <= 0.0) return {false, 0.0};
  return {true, moment / total};
}

}  // namespace

double boundary_coordinate(const Image<double>& mask, Side side) {
  const bool along_x = (side == Side::Left || side == Side::Right);
  const bool negate = (side == Side::Right || side == Side::Bottom);
  const auto [ok, coord] = weighted_mean(axis_response(mask, along_x, negate));
  if (!ok) throw Error(std::string("no boundary response on side ") + side_name(side));
  return coord;
}

std::vector<SideResponse> boundary_responses(const Image<double>& mask) {
  std::vector<SideResponse> out;
  for (Side s : {Side::Left, Side::Right, Side::Top, Side::Bottom}) {
    SideResponse r;
    r.side = s;
    r.response = axis_response(mask, s == Side::Left || s == Side::Right,
                               s == Side::Right || s == Side::Bottom);
    const auto [ok, coord] = weighted_mean(r.response);
    r.coordinate = ok ? coord : -1.0;
    out.push_back(std::move(r));
  }
  return out;
}

Box vectorize_box(const std::array<Image<double>, 3>& orientation) {
  const Image<double> mask = mask_from_orientation(orientation);
  return {boundary_coordinate(mask, Side::Left), boundary_coordinate(mask, Side::Top),
          boundary_coordinate(mask, Side::Right), boundary_coordinate(mask, Side::Bottom)};
}

AngleEstimate vectorize_angles(const std::array<Image<double>, 3>& orientation,
                               const Image<double>& angle) {
  AngleEstimate est;
  const std::size_t count = angle.data.size();
  const double eps = 1e-6 * static_cast<double>(count);
  for (int channel : {kChannelLR, kChannelTB}) {
    double total = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double w = orientation[channel].data[i];
      total += w;
      weighted += w * angle.data[i];
    }
    if (total < eps) continue;
    const double value = std::acos(std::clamp(weighted / total, -1.0, 1.0));
    (channel == kChannelLR ? est.angle_lr : est.angle_tb) = value;
  }
  return est;
}

PrimitiveType classify_type(const std::array<Image<double>, 3>& orientation) {
  long count_tb = 0, count_lr = 0;
  for (std::size_t i = 0; i < orientation[0].data.size(); ++i) {
    const double lr = orientation[kChannelLR].data[i];
    const double tb = orientation[kChannelTB].data[i];
    const double bg = orientation[kChannelBG].data[i];
    if (lr >= tb && lr >= bg) {
      ++count_lr;
    } else if (tb >= bg) {
      ++count_tb;
    }
  }
  const long total = count_tb + count_lr;
  if (total == 0) throw Error("classify_type: all pixels binarize to background");
  if (count_tb >= count_lr) {
    return count_lr <= 0.05 * total ? PrimitiveType::HorizontalGable
                                    : PrimitiveType::HorizontalHip;
  }
  return count_tb <= 0.05 * total ? PrimitiveType::VerticalGable : PrimitiveType::VerticalHip;
}

RoofPrimitive vectorize_primitive(const RasterBundle& bundle) {
  RoofPrimitive prim;
  prim.box = vectorize_box(bundle.orientation);
  prim.type = classify_type(bundle.orientation);
  const AngleEstimate est = vectorize_angles(bundle.orientation, bundle.angle);
  prim.angle_lr = est.angle_lr.value_or(0.0);
  prim.angle_tb = est.angle_tb.value_or(0.0);
  return prim;
}

}  // namespace roofkit
