#pragma once

#include "roofkit/geometry.hpp"

namespace roofkit {

// Diagonal of the 16 m normalization square: the largest possible vertex
// distance, charged for every unmatched element at every level.
inline const double kDefaultSquareSide = 16.0;
inline const double kDefaultPenalty = 16.0 * std::numbers::sqrt2;

struct MatchResult {
  struct Pair {
    int a;
    int b;
    double cost;
  };
  std::vector<Pair> pairs;      // in greedy selection order (nondecreasing cost)
  std::vector<int> unmatched_a; // rows left over when |A| > |B|
  double total = 0.0;           // sum of matched costs
};

// Repeatedly selects the global minimum entry and removes its row and
// column; ties broken by (row, col) lexicographic order. The matrix is
// row-major with `cols` entries per row.
MatchResult greedy_match(const std::vector<double>& cost, int rows, int cols);

inline double vertex_distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Greedy vertex matching; unmatched vertices of f1 contribute `penalty`;
// the sum is normalized by |f1| (asymmetric in both the normalizer and the
// unmatched set).
double facet_distance(const Facet& f1, const Facet& f2, double penalty = kDefaultPenalty);

// Greedy facet matching on the symmetrized facet cost, normalized by |m1|.
double model_distance(const RoofModel& m1, const RoofModel& m2,
                      double penalty = kDefaultPenalty);

// Symmetrized model cost, used by set_distance and the retrieval table.
double symmetric_model_cost(const RoofModel& m1, const RoofModel& m2,
                            double penalty = kDefaultPenalty);

// Uniformly scales and centers the footprint bounding box into the
// [0, square_side]^2 frame; z is scaled by the same factor.
RoofModel normalize_model(const RoofModel& m, double square_side = kDefaultSquareSide);

// Greedy model matching on symmetrized model costs, normalized by |s1|
// (s1 plays the ground-truth role). Models are expected pre-normalized.
// The |s1| x |s2| cost matrix is evaluated with `threads` workers.
double set_distance(const std::vector<RoofModel>& s1, const std::vector<RoofModel>& s2,
                    double penalty = kDefaultPenalty, int threads = 1);

// All pairwise symmetric model costs, row-major |s1| x |s2|.
std::vector<double> model_cost_matrix(const std::vector<RoofModel>& s1,
                                      const std::vector<RoofModel>& s2,
                                      double penalty = kDefaultPenalty, int threads = 1);

}  // namespace roofkit
