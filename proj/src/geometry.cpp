#include "semdist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semdist/errors.hpp"

namespace semdist {

namespace {

void check_same_dim(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.dim != q.dim)
    throw DimensionMismatch("simplex points have different dimensions");
}

}  // namespace

SimplexPoint SimplexPoint::from_dense(std::span<const double> values) {
  SimplexPoint out;
  out.dim = static_cast<WordId>(values.size());
  for (WordId i = 0; i < out.dim; ++i)
    if (values[i] != 0.0) out.coords.emplace_back(i, values[i]);
  return out;
}

bool SimplexPoint::is_valid(double tol) const {
  double sum = 0.0;
  WordId prev = -1;
  for (const auto& [i, v] : coords) {
    if (i <= prev || i >= dim || v < 0.0) return false;
    prev = i;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

double SimplexPoint::at(WordId i) const {
  auto it = std::lower_bound(
      coords.begin(), coords.end(), i,
      [](const std::pair<WordId, double>& e, WordId key) { return e.first < key; });
  if (it != coords.end() && it->first == i) return it->second;
  return 0.0;
}

double bhattacharyya(const SimplexPoint& p, const SimplexPoint& q) {
  check_same_dim(p, q);
  double sum = 0.0;
  auto a = p.coords.begin();
  auto b = q.coords.begin();
  while (a != p.coords.end() && b != q.coords.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += std::sqrt(a->second * b->second);
      ++a;
      ++b;
    }
  }
  return sum;
}

double fisher_distance(const SimplexPoint& p, const SimplexPoint& q) {
  double affinity = bhattacharyya(p, q);
  affinity = std::clamp(affinity, 0.0, 1.0);
  return 2.0 * std::acos(affinity);
}

double kl_divergence(const SimplexPoint& p, const SimplexPoint& q) {
  check_same_dim(p, q);
  double sum = 0.0;
  auto b = q.coords.begin();
  for (const auto& [i, pi] : p.coords) {
    if (pi == 0.0) continue;
    while (b != q.coords.end() && b->first < i) ++b;
    if (b == q.coords.end() || b->first != i || b->second == 0.0)
      return std::numeric_limits<double>::infinity();
    sum += pi * std::log(pi / b->second);
  }
  return sum;
}

double euclidean_sq(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw DimensionMismatch("vectors have different lengths");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = p[i] - q[i];
    sum += d * d;
  }
  return sum;
}

double euclidean_sq(const SimplexPoint& p, const SimplexPoint& q) {
  check_same_dim(p, q);
  double sum = 0.0;
  auto a = p.coords.begin();
  auto b = q.coords.begin();
  while (a != p.coords.end() || b != q.coords.end()) {
    if (b == q.coords.end() || (a != p.coords.end() && a->first < b->first)) {
      sum += a->second * a->second;
      ++a;
    } else if (a == p.coords.end() || b->first < a->first) {
      sum += b->second * b->second;
      ++b;
    } else {
      double d = a->second - b->second;
      sum += d * d;
      ++a;
      ++b;
    }
  }
  return sum;
}

}  // namespace semdist
