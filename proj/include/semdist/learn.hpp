#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "semdist/corpus.hpp"

namespace semdist {

// Majority label among the k nearest training points. Equal distances keep
// training-set order; vote ties go to the smallest summed distance, then to
// the lexicographically smallest label.
std::string knn_classify(std::span<const double> dists,
                         std::span<const std::string> labels,
                         int k);  // EmptyTrainingSet
std::string knn_classify(
    std::span<const Histogram> train, std::span<const std::string> labels,
    const Histogram& query, int k,
    const std::function<double(const Histogram&, const Histogram&)>& metric);

// Kernel PCA model fitted from a symmetric kernel matrix. Coordinates are
// y_i = α_iᵀ k̃ with α_i = v_i / √λ_i, so training projections are √λ_i v_i
// and full-rank projections preserve centered-kernel geometry.
struct KpcaModel {
  int requested_k = 0;
  int k = 0;  // retained dimension; smaller than requested when rank-deficient
  Eigen::MatrixXd alphas;                 // n×k
  Eigen::VectorXd eigenvalues;            // retained, descending, all > 1e-10
  std::vector<double> positive_spectrum;  // every eigenvalue > 1e-10, descending
  Eigen::VectorXd row_means;              // of the uncentered kernel matrix
  double grand_mean = 0;
  Eigen::MatrixXd train_coords;           // n×k

  bool rank_deficient() const { return k < requested_k; }
};

// Double-centers K, eigendecomposes, and retains the top-k positive
// eigenpairs; when fewer exist the model truncates and reports the actual
// rank through KpcaModel::k.
KpcaModel kpca_fit(const Eigen::MatrixXd& K, int k);

// Projects a new point from its kernel evaluations against the training set.
Eigen::VectorXd kpca_project(const KpcaModel& model,
                             const Eigen::VectorXd& k_row);  // DimensionMismatch

// Share of the total positive centered-kernel spectrum captured by the
// leading k eigenvalues.
double variance_fraction(const KpcaModel& model, int k);

// Centered feature-space reconstruction error k̃_self − Σ_{i≤k} y_i², clamped
// at zero within -1e-10. k < 0 means the model's retained dimension.
double test_residual(const KpcaModel& model, const Eigen::VectorXd& k_row,
                     double k_self, int k = -1);  // NegativeResidual

struct LdaModel {
  std::vector<std::string> classes;  // sorted
  Eigen::MatrixXd means;             // one row per class
  Eigen::MatrixXd weights;           // rows S⁻¹ μ_c
  Eigen::VectorXd bias;              // -½ μ_cᵀ S⁻¹ μ_c + log prior
};

// Multiclass linear discriminant with pooled within-class covariance plus a
// ridge; ridge < 0 selects 1e-6·trace(S)/dim.
LdaModel lda_fit(const Eigen::MatrixXd& X, std::span<const std::string> labels,
                 double ridge = -1);  // DegenerateClass
std::string lda_predict(const LdaModel& model, const Eigen::VectorXd& x);

}  // namespace semdist
