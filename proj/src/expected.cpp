#include "semdist/expected.hpp"

#include <algorithm>
#include <cmath>

namespace semdist {

namespace {

void check_vocab(const Histogram& h, const GramModel& gram) {
  if (h.total < 1) throw EmptyDocument("histogram has no tokens");
  if (!h.counts.empty() &&
      (h.counts.front().first < 0 || h.counts.back().first >= gram.vocab_size()))
    throw VocabMismatch("histogram ids outside the model vocabulary");
}

bool hist_less(const Histogram& a, const Histogram& b) {
  if (a.total != b.total) return a.total < b.total;
  return a.counts < b.counts;
}

// cᵀ(a) G c(b) with a fixed canonical iteration order, so swapping the
// arguments produces the bit-identical sum.
double count_cross(const Histogram& a, const Histogram& b, const GramModel& gram) {
  const Histogram* first = &a;
  const Histogram* second = &b;
  if (hist_less(b, a)) std::swap(first, second);
  double sum = 0.0;
  for (const auto& [u, cu] : first->counts) {
    double row = 0.0;
    for (const auto& [v, cv] : second->counts)
      row += static_cast<double>(cv) * gram.at(u, v);
    sum += static_cast<double>(cu) * row;
  }
  return sum;
}

// cᵀGc − Σ_v c_v G_vv: the off-diagonal part of the positional double sum.
double count_self(const Histogram& a, const GramModel& gram) {
  double quad = count_cross(a, a, gram);
  double diag = 0.0;
  for (const auto& [v, cv] : a.counts)
    diag += static_cast<double>(cv) * gram.diag(v);
  return quad - diag;
}

}  // namespace

GramModel GramModel::identity(WordId vocab_size) {
  GramModel gram;
  gram.block.resize(0, 0);
  gram.block_index.assign(vocab_size, -1);
  return gram;
}

GramModel precompute_gram(const TranslationModel& T, Exec exec) {
  GramModel gram;
  gram.included = T.included;
  gram.block_index = T.block_index;
  gram.block = symmetric_product(T.block, exec);
  return gram;
}

double expected_self_inner(const Histogram& x, const GramModel& gram) {
  check_vocab(x, gram);
  const double n = static_cast<double>(x.total);
  return count_self(x, gram) / (n * n) + 1.0 / n;
}

double expected_sq_l2(const Histogram& x, const Histogram& w,
                      const GramModel& gram) {
  check_vocab(x, gram);
  check_vocab(w, gram);
  // Canonical argument order: swapping x and w must give the bit-identical
  // sum, and floating-point addition is only commutative, not associative.
  const Histogram& a = hist_less(w, x) ? w : x;
  const Histogram& b = hist_less(w, x) ? x : w;
  const double na = static_cast<double>(a.total);
  const double nb = static_cast<double>(b.total);
  double value = count_self(a, gram) / (na * na) + 1.0 / na +
                 count_self(b, gram) / (nb * nb) + 1.0 / nb -
                 2.0 * count_cross(a, b, gram) / (na * nb);
  if (value < 0.0) {
    if (value < -1e-12)
      throw NumericError("expected squared distance is negative");
    value = 0.0;
  }
  return value;
}

double expected_linear_kernel(const Histogram& x, const Histogram& w,
                              const GramModel& gram) {
  check_vocab(x, gram);
  check_vocab(w, gram);
  return count_cross(x, w, gram) /
         (static_cast<double>(x.total) * static_cast<double>(w.total));
}

double expected_rbf_kernel(const Histogram& x, const Histogram& w,
                           const GramModel& gram, double sigma_k) {
  if (sigma_k <= 0) throw UsageError("kernel sigma must be positive");
  return std::exp(-expected_sq_l2(x, w, gram) / (sigma_k * sigma_k));
}

namespace {

// One inverse-CDF draw from a translation row.
WordId sample_row(const TranslationModel& T, WordId token, SplitMix64& rng) {
  WordId b = T.block_index[token];
  if (b < 0) return token;  // excluded words keep themselves
  double u = rng.next_double();
  double acc = 0.0;
  const std::int64_t k = T.block.cols();
  for (std::int64_t j = 0; j < k; ++j) {
    acc += T.block(b, j);
    if (u < acc) return T.included[j];
  }
  return T.included[k - 1];
}

}  // namespace

Document sample_translation(const Document& doc, const TranslationModel& T,
                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  Document out;
  out.id = doc.id;
  out.label = doc.label;
  out.tokens.reserve(doc.tokens.size());
  for (WordId token : doc.tokens) out.tokens.push_back(sample_row(T, token, rng));
  return out;
}

McEstimate mc_expected_sq_l2(const Histogram& x, const Histogram& w,
                             const TranslationModel& T, std::int64_t samples,
                             std::uint64_t seed, Exec exec) {
  if (samples < 1) throw UsageError("need at least one sample");
  std::vector<WordId> tokens_x, tokens_w;
  for (const auto& [id, c] : x.counts)
    tokens_x.insert(tokens_x.end(), static_cast<std::size_t>(c), id);
  for (const auto& [id, c] : w.counts)
    tokens_w.insert(tokens_w.end(), static_cast<std::size_t>(c), id);
  if (tokens_x.empty() || tokens_w.empty())
    throw EmptyDocument("histogram has no tokens");
  const double nx = static_cast<double>(tokens_x.size());
  const double nw = static_cast<double>(tokens_w.size());

  // Per-sample values are stored and reduced serially afterwards, so the
  // estimate does not depend on the execution policy or thread count.
  std::vector<double> values(static_cast<std::size_t>(samples));
  par_for(samples, exec, [&](std::int64_t s) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
    thread_local std::vector<WordId> ty, tz;
    ty.clear();
    tz.clear();
    for (WordId tok : tokens_x) ty.push_back(sample_row(T, tok, rng));
    for (WordId tok : tokens_w) tz.push_back(sample_row(T, tok, rng));
    std::sort(ty.begin(), ty.end());
    std::sort(tz.begin(), tz.end());

    // ‖γ(y) − γ(z)‖² over the union of supports, by merging sorted runs.
    double dist = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ty.size() || j < tz.size()) {
      WordId id;
      if (j >= tz.size() || (i < ty.size() && ty[i] < tz[j]))
        id = ty[i];
      else
        id = tz[j];
      std::int64_t cy = 0, cz = 0;
      while (i < ty.size() && ty[i] == id) ++cy, ++i;
      while (j < tz.size() && tz[j] == id) ++cz, ++j;
      double d = static_cast<double>(cy) / nx - static_cast<double>(cz) / nw;
      dist += d * d;
    }
    values[static_cast<std::size_t>(s)] = dist;
  });

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  McEstimate est;
  est.mean = mean;
  est.std_err = samples > 1 ? std::sqrt(var / static_cast<double>(samples - 1) /
                                        static_cast<double>(samples))
                            : 0.0;
  return est;
}

namespace {

template <typename Entry>
Eigen::MatrixXd pairwise(std::int64_t n, Exec exec, const Entry& entry) {
  Eigen::MatrixXd out(n, n);
  par_for(n, exec, [&](std::int64_t i) {
    for (std::int64_t j = i; j < n; ++j) {
      double v = entry(i, j);
      out(i, j) = v;
      out(j, i) = v;
    }
  });
  return out;
}

}  // namespace

Eigen::MatrixXd pairwise_expected_sq_l2(std::span<const Histogram> docs,
                                        const GramModel& gram, Exec exec) {
  // Validate up front: the parallel bodies must not throw.
  for (const Histogram& h : docs) check_vocab(h, gram);
  const std::int64_t n = static_cast<std::int64_t>(docs.size());
  std::vector<double> self(docs.size());
  par_for(n, exec,
          [&](std::int64_t i) { self[i] = expected_self_inner(docs[i], gram); });
  return pairwise(n, exec, [&](std::int64_t i, std::int64_t j) {
    const double nx = static_cast<double>(docs[i].total);
    const double nw = static_cast<double>(docs[j].total);
    double v = self[i] + self[j] -
               2.0 * count_cross(docs[i], docs[j], gram) / (nx * nw);
    return v < 0.0 && v >= -1e-12 ? 0.0 : v;
  });
}

Eigen::MatrixXd pairwise_expected_linear(std::span<const Histogram> docs,
                                         const GramModel& gram, Exec exec) {
  for (const Histogram& h : docs) check_vocab(h, gram);
  return pairwise(static_cast<std::int64_t>(docs.size()), exec,
                  [&](std::int64_t i, std::int64_t j) {
                    return count_cross(docs[i], docs[j], gram) /
                           (static_cast<double>(docs[i].total) *
                            static_cast<double>(docs[j].total));
                  });
}

Eigen::MatrixXd pairwise_expected_rbf(std::span<const Histogram> docs,
                                      const GramModel& gram, double sigma_k,
                                      Exec exec) {
  Eigen::MatrixXd dist = pairwise_expected_sq_l2(docs, gram, exec);
  return (-dist / (sigma_k * sigma_k)).array().exp().matrix();
}

namespace {

std::vector<SimplexPoint> to_points(std::span<const Histogram> docs, WordId dim) {
  std::vector<SimplexPoint> pts;
  pts.reserve(docs.size());
  for (const Histogram& h : docs) pts.push_back(h.to_simplex(dim));
  return pts;
}

double sparse_inner(const SimplexPoint& a, const SimplexPoint& b) {
  double sum = 0.0;
  auto x = a.coords.begin();
  auto y = b.coords.begin();
  while (x != a.coords.end() && y != b.coords.end()) {
    if (x->first < y->first)
      ++x;
    else if (y->first < x->first)
      ++y;
    else
      sum += (x++)->second * (y++)->second;
  }
  return sum;
}

}  // namespace

Eigen::MatrixXd pairwise_plain_sq_l2(std::span<const Histogram> docs, WordId dim,
                                     Exec exec) {
  std::vector<SimplexPoint> pts = to_points(docs, dim);
  return pairwise(static_cast<std::int64_t>(docs.size()), exec,
                  [&](std::int64_t i, std::int64_t j) {
                    return euclidean_sq(pts[i], pts[j]);
                  });
}

Eigen::MatrixXd pairwise_plain_linear(std::span<const Histogram> docs, WordId dim,
                                      Exec exec) {
  std::vector<SimplexPoint> pts = to_points(docs, dim);
  return pairwise(static_cast<std::int64_t>(docs.size()), exec,
                  [&](std::int64_t i, std::int64_t j) {
                    return sparse_inner(pts[i], pts[j]);
                  });
}

Eigen::MatrixXd pairwise_plain_rbf(std::span<const Histogram> docs, WordId dim,
                                   double sigma_k, Exec exec) {
  Eigen::MatrixXd dist = pairwise_plain_sq_l2(docs, dim, exec);
  return (-dist / (sigma_k * sigma_k)).array().exp().matrix();
}

}  // namespace semdist
