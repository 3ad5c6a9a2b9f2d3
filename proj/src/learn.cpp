#include "semdist/learn.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace semdist {

std::string knn_classify(std::span<const double> dists,
                         std::span<const std::string> labels, int k) {
  const std::size_t n = dists.size();
  if (n == 0) throw EmptyTrainingSet("empty training set");
  if (labels.size() != n)
    throw DimensionMismatch("labels and distances differ in length");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw UsageError("k must be between 1 and the training size");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dists[a] < dists[b]; });

  struct Tally {
    int votes = 0;
    double dist_sum = 0;
  };
  std::map<std::string, Tally> tallies;
  for (int i = 0; i < k; ++i) {
    Tally& t = tallies[labels[order[i]]];
    ++t.votes;
    t.dist_sum += dists[order[i]];
  }
  const std::string* best = nullptr;
  for (const auto& [label, t] : tallies) {
    if (best == nullptr) {
      best = &label;
      continue;
    }
    const Tally& bt = tallies.at(*best);
    if (t.votes > bt.votes ||
        (t.votes == bt.votes && t.dist_sum < bt.dist_sum))
      best = &label;
  }
  return *best;
}

std::string knn_classify(
    std::span<const Histogram> train, std::span<const std::string> labels,
    const Histogram& query, int k,
    const std::function<double(const Histogram&, const Histogram&)>& metric) {
  std::vector<double> dists;
  dists.reserve(train.size());
  for (const Histogram& h : train) dists.push_back(metric(query, h));
  return knn_classify(dists, labels, k);
}

KpcaModel kpca_fit(const Eigen::MatrixXd& K, int k) {
  const std::int64_t n = K.rows();
  if (n < 1 || K.cols() != n) throw DimensionMismatch("kernel matrix not square");
  if (k < 0) throw UsageError("requested dimension must be nonnegative");
  double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw DataError("kernel matrix is not symmetric");

  KpcaModel model;
  model.requested_k = k;
  model.row_means = K.rowwise().mean();
  model.grand_mean = K.mean();

  Eigen::MatrixXd centered = K;
  centered.colwise() -= model.row_means;
  centered.rowwise() -= model.row_means.transpose();
  centered.array() += model.grand_mean;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("kernel eigendecomposition failed");

  // Ascending from the solver; walk backwards for the descending spectrum.
  for (std::int64_t i = n - 1; i >= 0; --i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda > 1e-10) model.positive_spectrum.push_back(lambda);
  }
  model.k = static_cast<int>(
      std::min<std::size_t>(k, model.positive_spectrum.size()));

  model.eigenvalues.resize(model.k);
  model.alphas.resize(n, model.k);
  model.train_coords.resize(n, model.k);
  for (int j = 0; j < model.k; ++j) {
    double lambda = model.positive_spectrum[j];
    Eigen::VectorXd v = solver.eigenvectors().col(n - 1 - j);
    model.eigenvalues(j) = lambda;
    model.alphas.col(j) = v / std::sqrt(lambda);
    model.train_coords.col(j) = std::sqrt(lambda) * v;
  }
  return model;
}

Eigen::VectorXd kpca_project(const KpcaModel& model, const Eigen::VectorXd& k_row) {
  if (k_row.size() != model.row_means.size())
    throw DimensionMismatch("kernel row length does not match training size");
  Eigen::VectorXd centered =
      k_row - model.row_means -
      Eigen::VectorXd::Constant(k_row.size(), k_row.mean() - model.grand_mean);
  return model.alphas.transpose() * centered;
}

double variance_fraction(const KpcaModel& model, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > model.positive_spectrum.size())
    throw UsageError("k exceeds the positive spectrum");
  double total = std::accumulate(model.positive_spectrum.begin(),
                                 model.positive_spectrum.end(), 0.0);
  if (total <= 0) return 0.0;
  double head = std::accumulate(model.positive_spectrum.begin(),
                                model.positive_spectrum.begin() + k, 0.0);
  return head / total;
}

double test_residual(const KpcaModel& model, const Eigen::VectorXd& k_row,
                     double k_self, int k) {
  if (k < 0) k = model.k;
  if (k > model.k) throw UsageError("k exceeds the retained dimension");
  Eigen::VectorXd coords = kpca_project(model, k_row);
  double centered_self = k_self - 2.0 * k_row.mean() + model.grand_mean;
  double captured = coords.head(k).squaredNorm();
  double residual = centered_self - captured;
  if (residual < 0.0) {
    if (residual < -1e-10)
      throw NegativeResidual("projection residual below -1e-10");
    residual = 0.0;
  }
  return residual;
}

LdaModel lda_fit(const Eigen::MatrixXd& X, std::span<const std::string> labels,
                 double ridge) {
  const std::int64_t n = X.rows();
  const std::int64_t d = X.cols();
  if (static_cast<std::int64_t>(labels.size()) != n)
    throw DimensionMismatch("label count does not match row count");

  std::map<std::string, std::vector<std::int64_t>> by_class;
  for (std::int64_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  if (by_class.size() < 2) throw DegenerateClass("need at least two classes");
  for (const auto& [label, rows] : by_class)
    if (rows.size() < 2)
      throw DegenerateClass("class with fewer than two points: " + label);

  LdaModel model;
  const std::int64_t c = static_cast<std::int64_t>(by_class.size());
  model.classes.reserve(c);
  model.means.resize(c, d);
  Eigen::VectorXd priors(c);
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  std::int64_t ci = 0;
  for (const auto& [label, rows] : by_class) {
    model.classes.push_back(label);
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(d);
    for (std::int64_t r : rows) mean += X.row(r);
    mean /= static_cast<double>(rows.size());
    model.means.row(ci) = mean;
    priors(ci) = static_cast<double>(rows.size()) / static_cast<double>(n);
    for (std::int64_t r : rows) {
      Eigen::RowVectorXd delta = X.row(r) - mean;
      scatter += delta.transpose() * delta;
    }
    ++ci;
  }
  scatter /= static_cast<double>(n - c);

  if (ridge < 0) ridge = 1e-6 * scatter.trace() / static_cast<double>(d);
  scatter += ridge * Eigen::MatrixXd::Identity(d, d);

  Eigen::LDLT<Eigen::MatrixXd> solve(scatter);
  if (solve.info() != Eigen::Success)
    throw EigenFailure("within-class scatter is not factorizable");
  model.weights = solve.solve(model.means.transpose()).transpose();
  model.bias.resize(c);
  for (std::int64_t i = 0; i < c; ++i)
    model.bias(i) = -0.5 * model.means.row(i).dot(model.weights.row(i)) +
                    std::log(priors(i));
  return model;
}

std::string lda_predict(const LdaModel& model, const Eigen::VectorXd& x) {
  Eigen::VectorXd scores = model.weights * x + model.bias;
  std::int64_t best = 0;
  for (std::int64_t i = 1; i < scores.size(); ++i)
    if (scores(i) > scores(best)) best = i;
  return model.classes[static_cast<std::size_t>(best)];
}

}  // namespace semdist
