#include "semdist/diffusion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "semdist/rng.hpp"

namespace semdist {

namespace {

// Square roots of the sparse row values, so pairwise affinities only multiply.
std::vector<SparseVec> sqrt_rows(const ContextualModel& model,
                                 std::span<const WordId> included) {
  std::vector<SparseVec> rows(included.size());
  for (std::size_t i = 0; i < included.size(); ++i) {
    const SparseVec& src = model.rows[included[i]];
    SparseVec dst;
    dst.reserve(src.size());
    for (const auto& [id, v] : src) dst.emplace_back(id, std::sqrt(v));
    rows[i] = std::move(dst);
  }
  return rows;
}

double sparse_dot(const SparseVec& a, const SparseVec& b) {
  double sum = 0.0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      sum += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return sum;
}

double affinity_to_weight(double affinity, double inv_sigma_sq) {
  double d = std::acos(std::clamp(affinity, 0.0, 1.0));
  return std::exp(-d * d * inv_sigma_sq);
}

}  // namespace

Eigen::MatrixXd symmetric_product(const RowMatrixXd& A, Exec exec) {
  const std::int64_t n = A.rows();
  Eigen::MatrixXd out(n, n);
  par_for(n, exec, [&](std::int64_t i) {
    for (std::int64_t j = i; j < n; ++j) {
      double v = A.row(i).dot(A.row(j));
      out(i, j) = v;
      out(j, i) = v;
    }
  });
  return out;
}

WordGraph edge_weights(const ContextualModel& model, double sigma,
                       std::span<const WordId> included, Exec exec) {
  if (sigma <= 0) throw UsageError("sigma must be positive");
  if (included.empty()) throw UsageError("included vocabulary is empty");
  const std::int64_t k = static_cast<std::int64_t>(included.size());
  std::vector<SparseVec> rows = sqrt_rows(model, included);
  const double inv_sigma_sq = 1.0 / (sigma * sigma);

  WordGraph graph;
  graph.sigma = sigma;
  graph.word_ids.assign(included.begin(), included.end());
  graph.weights.resize(k, k);
  par_for(k, exec, [&](std::int64_t i) {
    graph.weights(i, i) = 1.0;
    for (std::int64_t j = i + 1; j < k; ++j) {
      double w = affinity_to_weight(sparse_dot(rows[i], rows[j]), inv_sigma_sq);
      graph.weights(i, j) = w;
      graph.weights(j, i) = w;
    }
  });
  return graph;
}

void sparsify(WordGraph& graph, int top_k) {
  const std::int64_t k = graph.weights.rows();
  if (top_k <= 0 || top_k >= k - 1) return;
  std::vector<std::vector<char>> keep(k, std::vector<char>(k, 0));
  std::vector<std::pair<double, std::int64_t>> order;
  for (std::int64_t i = 0; i < k; ++i) {
    order.clear();
    for (std::int64_t j = 0; j < k; ++j)
      if (j != i) order.emplace_back(-graph.weights(i, j), j);
    std::nth_element(order.begin(), order.begin() + top_k - 1, order.end());
    for (int r = 0; r < top_k; ++r) keep[i][order[r].second] = 1;
  }
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = i + 1; j < k; ++j)
      if (!keep[i][j] && !keep[j][i]) {
        graph.weights(i, j) = 0.0;
        graph.weights(j, i) = 0.0;
      }
}

double default_sigma(const ContextualModel& model,
                     std::span<const WordId> included, std::uint64_t seed,
                     int pairs) {
  const std::int64_t k = static_cast<std::int64_t>(included.size());
  if (k < 2) return 1.0;
  std::vector<SparseVec> rows = sqrt_rows(model, included);
  std::vector<double> dists;
  auto push = [&](std::int64_t i, std::int64_t j) {
    dists.push_back(std::acos(std::clamp(sparse_dot(rows[i], rows[j]), 0.0, 1.0)));
  };
  if (k * (k - 1) / 2 <= pairs) {
    for (std::int64_t i = 0; i < k; ++i)
      for (std::int64_t j = i + 1; j < k; ++j) push(i, j);
  } else {
    SplitMix64 rng(mix_seed(seed, 0x5197a));
    for (int p = 0; p < pairs; ++p) {
      std::int64_t i = static_cast<std::int64_t>(rng.next_below(k));
      std::int64_t j = static_cast<std::int64_t>(rng.next_below(k - 1));
      if (j >= i) ++j;
      push(i, j);
    }
  }
  std::size_t mid = (dists.size() - 1) / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  double med = dists[mid];
  return med > 0 ? med : 1.0;
}

LaplacianSpectrum normalized_laplacian(const WordGraph& graph) {
  const std::int64_t k = graph.weights.rows();
  Eigen::VectorXd degree = graph.weights.rowwise().sum();
  Eigen::VectorXd inv_sqrt(k);
  for (std::int64_t i = 0; i < k; ++i) {
    if (degree(i) <= 0) throw NumericError("nonpositive degree in word graph");
    inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
  }
  Eigen::MatrixXd lap(k, k);
  for (std::int64_t i = 0; i < k; ++i) {
    lap(i, i) = 1.0 - graph.weights(i, i) * inv_sqrt(i) * inv_sqrt(i);
    for (std::int64_t j = i + 1; j < k; ++j) {
      double v = -graph.weights(i, j) * inv_sqrt(i) * inv_sqrt(j);
      lap(i, j) = v;
      lap(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("eigendecomposition of the normalized Laplacian failed");

  LaplacianSpectrum spectrum;
  spectrum.eigenvalues = solver.eigenvalues();
  spectrum.eigenvectors = solver.eigenvectors();
  spectrum.degree = std::move(degree);
  const double tol = 1e-8;
  if (spectrum.eigenvalues(0) < -tol || spectrum.eigenvalues(k - 1) > 2.0 + tol)
    throw EigenFailure("normalized Laplacian spectrum outside [0, 2]");
  return spectrum;
}

Eigen::MatrixXd heat_kernel(const LaplacianSpectrum& spectrum, double t, Exec exec) {
  if (t < 0) throw UsageError("diffusion time must be nonnegative");
  const std::int64_t k = spectrum.eigenvalues.size();
  if (t == 0.0) return Eigen::MatrixXd::Identity(k, k);

  // H = A Aᵀ with A = Q diag(exp(-t λ / 2)); computing it as a symmetric
  // product keeps H exactly symmetric.
  RowMatrixXd scaled = spectrum.eigenvectors;
  for (std::int64_t j = 0; j < k; ++j)
    scaled.col(j) *= std::exp(-0.5 * t * spectrum.eigenvalues(j));
  Eigen::MatrixXd H = symmetric_product(scaled, exec);
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = 0; j < k; ++j) {
      if (H(i, j) < -1e-10)
        throw NegativeEntry("heat kernel entry below -1e-10");
      if (H(i, j) < 0) H(i, j) = 0.0;
    }
  return H;
}

double TranslationModel::at(WordId u, WordId w) const {
  WordId bu = block_index[u], bw = block_index[w];
  if (bu < 0 || bw < 0) return u == w ? 1.0 : 0.0;
  return block(bu, bw);
}

TranslationModel TranslationModel::identity(WordId vocab_size) {
  TranslationModel model;
  model.block.resize(0, 0);
  model.block_index.assign(vocab_size, -1);
  model.excluded.resize(vocab_size);
  for (WordId i = 0; i < vocab_size; ++i) model.excluded[i] = i;
  return model;
}

TranslationModel make_translation(const Eigen::MatrixXd& H,
                                  std::span<const WordId> excluded,
                                  WordId full_vocab_size, double t,
                                  double sigma) {
  TranslationModel model;
  model.t = t;
  model.sigma = sigma;
  model.excluded.assign(excluded.begin(), excluded.end());
  std::sort(model.excluded.begin(), model.excluded.end());
  model.included = complement_ids(full_vocab_size, model.excluded);
  if (static_cast<std::int64_t>(model.included.size()) != H.rows())
    throw DimensionMismatch("heat kernel size does not match included vocabulary");

  model.block_index.assign(full_vocab_size, -1);
  for (std::size_t i = 0; i < model.included.size(); ++i)
    model.block_index[model.included[i]] = static_cast<WordId>(i);

  const std::int64_t k = H.rows();
  model.block.resize(k, k);
  for (std::int64_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::int64_t j = 0; j < k; ++j) {
      double v = H(i, j);
      if (v < -1e-10) throw NegativeEntry("translation source entry below -1e-10");
      if (v < 0) v = 0.0;
      sum += v;
    }
    if (sum <= 0.0) throw ZeroRow("heat kernel row sums to zero");
    for (std::int64_t j = 0; j < k; ++j)
      model.block(i, j) = std::max(H(i, j), 0.0) / sum;
  }
  return model;
}

std::vector<Neighbor> nearest_words(const ContextualModel& model,
                                    std::string_view word, int n, double sigma,
                                    std::span<const WordId> included) {
  auto id = model.vocab.id_of(word);
  if (!id) throw UnknownWord("unknown word: " + std::string(word));
  auto pos = std::lower_bound(included.begin(), included.end(), *id);
  if (pos == included.end() || *pos != *id)
    throw UnknownWord("word is excluded from translation: " + std::string(word));
  if (n <= 0) return {};

  std::vector<SparseVec> rows = sqrt_rows(model, included);
  const std::size_t self = static_cast<std::size_t>(pos - included.begin());
  const double inv_sigma_sq = 1.0 / (sigma * sigma);
  std::vector<Neighbor> all;
  all.reserve(included.size() - 1);
  for (std::size_t j = 0; j < included.size(); ++j) {
    if (j == self) continue;
    double w = affinity_to_weight(sparse_dot(rows[self], rows[j]), inv_sigma_sq);
    all.push_back({included[j], model.vocab.term(included[j]), w});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  });
  if (all.size() > static_cast<std::size_t>(n)) all.resize(n);
  return all;
}

std::vector<WordId> top_doc_freq_ids(const Vocabulary& vocab, int n) {
  std::vector<WordId> ids(vocab.size());
  for (WordId i = 0; i < vocab.size(); ++i) ids[i] = i;
  if (n <= 0) return {};
  if (n > vocab.size()) n = vocab.size();
  std::sort(ids.begin(), ids.end(), [&](WordId a, WordId b) {
    if (vocab.doc_freq(a) != vocab.doc_freq(b))
      return vocab.doc_freq(a) > vocab.doc_freq(b);
    return a < b;
  });
  ids.resize(n);
  std::sort(ids.begin(), ids.end());
  return ids;
}

int default_exclusion_count(WordId vocab_size) {
  return std::min(2000, vocab_size / 10);
}

std::vector<WordId> complement_ids(WordId vocab_size,
                                   std::span<const WordId> excluded) {
  std::vector<char> is_excluded(vocab_size, 0);
  for (WordId id : excluded) is_excluded[id] = 1;
  std::vector<WordId> out;
  out.reserve(vocab_size - excluded.size());
  for (WordId i = 0; i < vocab_size; ++i)
    if (!is_excluded[i]) out.push_back(i);
  return out;
}

}  // namespace semdist
