#include "roofkit/rmmd.hpp"

#include <algorithm>
#include <limits>

#include "roofkit/threading.hpp"

namespace roofkit {

MatchResult greedy_match(const std::vector<double>& cost, int rows, int cols) {
  if (static_cast<std::size_t>(rows) * cols != cost.size()) {
    throw Error("greedy_match: matrix shape mismatch");
  }
  MatchResult result;
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  const int steps = std::min(rows, cols);
  for (int step = 0; step < steps; ++step) {
    int best_r = -1, best_c = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      for (int c = 0; c < cols; ++c) {
        if (col_used[c]) continue;
        const double v = cost[static_cast<std::size_t>(r) * cols + c];
        if (v < best) {  // strict: ties keep the lexicographically first
          best = v;
          best_r = r;
          best_c = c;
        }
      }
    }
    row_used[best_r] = true;
    col_used[best_c] = true;
    result.pairs.push_back({best_r, best_c, best});
    result.total += best;
  }
  for (int r = 0; r < rows; ++r) {
    if (!row_used[r]) result.unmatched_a.push_back(r);
  }
  return result;
}

double facet_distance(const Facet& f1, const Facet& f2, double penalty) {
  const int n1 = static_cast<int>(f1.vertices.size());
  const int n2 = static_cast<int>(f2.vertices.size());
  if (n1 == 0 || n2 == 0) throw Error("facet_distance: empty facet");
  std::vector<double> cost(static_cast<std::size_t>(n1) * n2);
  for (int r = 0; r < n1; ++r) {
    for (int c = 0; c < n2; ++c) {
      cost[static_cast<std::size_t>(r) * n2 + c] =
          vertex_distance(f1.vertices[r], f2.vertices[c]);
    }
  }
  const MatchResult match = greedy_match(cost, n1, n2);
  return (match.total + penalty * static_cast<double>(match.unmatched_a.size())) / n1;
}

namespace {

double directed_model_distance(const RoofModel& m1, const RoofModel& m2, double penalty,
                               const std::vector<double>& sym_cost) {
  const int n1 = static_cast<int>(m1.facets.size());
  const int n2 = static_cast<int>(m2.facets.size());
  const MatchResult match = greedy_match(sym_cost, n1, n2);
  return (match.total + penalty * static_cast<double>(match.unmatched_a.size())) / n1;
}

std::vector<double> facet_cost_matrix(const RoofModel& m1, const RoofModel& m2,
                                      double penalty) {
  const int n1 = static_cast<int>(m1.facets.size());
  const int n2 = static_cast<int>(m2.facets.size());
  std::vector<double> cost(static_cast<std::size_t>(n1) * n2);
  for (int r = 0; r < n1; ++r) {
    for (int c = 0; c < n2; ++c) {
      cost[static_cast<std::size_t>(r) * n2 + c] =
          0.5 * (facet_distance(m1.facets[r], m2.facets[c], penalty) +
                 facet_distance(m2.facets[c], m1.facets[r], penalty));
    }
  }
  return cost;
}

std::vector<double> transpose_matrix(const std::vector<double>& m, int rows, int cols) {
  std::vector<double> t(m.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      t[static_cast<std::size_t>(c) * rows + r] = m[static_cast<std::size_t>(r) * cols + c];
    }
  }
  return t;
}

}  // namespace

double model_distance(const RoofModel& m1, const RoofModel& m2, double penalty) {
  if (m1.facets.empty() || m2.facets.empty()) throw Error("model_distance: empty model");
  return directed_model_distance(m1, m2, penalty, facet_cost_matrix(m1, m2, penalty));
}

double symmetric_model_cost(const RoofModel& m1, const RoofModel& m2, double penalty) {
  if (m1.facets.empty() || m2.facets.empty()) throw Error("model cost: empty model");
  const int n1 = static_cast<int>(m1.facets.size());
  const int n2 = static_cast<int>(m2.facets.size());
  const std::vector<double> fwd = facet_cost_matrix(m1, m2, penalty);
  const std::vector<double> rev = transpose_matrix(fwd, n1, n2);
  return 0.5 * (directed_model_distance(m1, m2, penalty, fwd) +
                directed_model_distance(m2, m1, penalty, rev));
}

RoofModel normalize_model(const RoofModel& m, double square_side) {
  if (m.facets.empty()) throw Error("normalize_model: empty model");
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const Facet& f : m.facets) {
    for (const Vec3& v : f.vertices) {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (!(extent > 0.0)) throw Error("normalize_model: zero-extent model");
  const double s = square_side / extent;
  const double offset_x = 0.5 * (square_side - s * (max_x - min_x)) - s * min_x;
  const double offset_y = 0.5 * (square_side - s * (max_y - min_y)) - s * min_y;

  RoofModel out = m;
  for (Facet& f : out.facets) {
    for (Vec3& v : f.vertices) {
      v.x = s * v.x + offset_x;
      v.y = s * v.y + offset_y;
      v.z = s * v.z;
    }
  }
  return out;
}

std::vector<double> model_cost_matrix(const std::vector<RoofModel>& s1,
                                      const std::vector<RoofModel>& s2, double penalty,
                                      int threads) {
  const int n1 = static_cast<int>(s1.size());
  const int n2 = static_cast<int>(s2.size());
  std::vector<double> cost(static_cast<std::size_t>(n1) * n2);
  parallel_for(n1, threads, [&](int r) {
    for (int c = 0; c < n2; ++c) {
      cost[static_cast<std::size_t>(r) * n2 + c] =
          symmetric_model_cost(s1[r], s2[c], penalty);
    }
  });
  return cost;
}

double set_distance(const std::vector<RoofModel>& s1, const std::vector<RoofModel>& s2,
                    double penalty, int threads) {
  if (s1.empty() || s2.empty()) throw Error("set_distance: empty set");
  const std::vector<double> cost = model_cost_matrix(s1, s2, penalty, threads);
  const MatchResult match =
      greedy_match(cost, static_cast<int>(s1.size()), static_cast<int>(s2.size()));
  return (match.total + penalty * static_cast<double>(match.unmatched_a.size())) /
         static_cast<double>(s1.size());
}

}  // namespace roofkit
