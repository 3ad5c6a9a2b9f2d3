#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace semdist {

using WordId = std::int32_t;

// Sparse vector: (index, value) pairs sorted by index, indices unique.
using SparseVec = std::vector<std::pair<WordId, double>>;

// A point on the probability simplex: nonnegative coordinates summing to one,
// stored sparsely over a fixed ambient dimension.
struct SimplexPoint {
  WordId dim = 0;
  SparseVec coords;

  static SimplexPoint from_dense(std::span<const double> values);
  bool is_valid(double tol = 1e-12) const;
  double at(WordId i) const;  // 0 when absent
};

// Bhattacharyya affinity Σ √(p_i q_i), in [0, 1] up to round-off.
double bhattacharyya(const SimplexPoint& p, const SimplexPoint& q);

// Geodesic distance between multinomial parameters under the information
// metric: 2·arccos Σ√(p_i q_i), in [0, π]. The affinity is clamped to [0, 1]
// before arccos so that p ≈ q cannot fall outside the domain.
double fisher_distance(const SimplexPoint& p, const SimplexPoint& q);

// Σ p_i log(p_i / q_i) in nats, with 0·log(0/·) = 0. Returns +inf when some
// p_i > 0 has q_i = 0, so batch computations need not abort.
double kl_divergence(const SimplexPoint& p, const SimplexPoint& q);

double euclidean_sq(std::span<const double> p, std::span<const double> q);
double euclidean_sq(const SimplexPoint& p, const SimplexPoint& q);

}  // namespace semdist
