#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semdist/expected.hpp"
#include "semdist/learn.hpp"

namespace semdist {

// Labeled documents mapped onto a model vocabulary.
struct LabeledDocs {
  std::vector<Histogram> hists;
  std::vector<std::string> labels;
  std::vector<std::string> ids;
  std::int64_t skipped_tokens = 0;  // tokens outside the vocabulary
  std::int64_t dropped_docs = 0;    // unlabeled or fully out-of-vocabulary
};

LabeledDocs map_labeled_corpus(std::span<const RawDoc> docs,
                               const Vocabulary& vocab,
                               const TokenizeOptions& opt);

struct KnnEvalOptions {
  std::vector<int> train_sizes = {10, 20, 40};
  int test_per_class = 40;
  int realizations = 40;
  int k = 1;
  std::uint64_t seed = 42;
  Exec exec = Exec::parallel;
};

struct KnnEvalRow {
  std::string task;
  int train_size = 0;
  std::string metric;  // "l2" or "expected-l2"
  double mean_error = 0;
  double sd = 0;
  int realizations = 0;
};

// One-vs-all nearest-neighbor evaluation over balanced seeded resamplings;
// both metrics are evaluated on identical splits.
std::vector<KnnEvalRow> run_knn_eval(const LabeledDocs& docs,
                                     const GramModel& gram,
                                     const KnnEvalOptions& opt);

struct KpcaEvalOptions {
  std::vector<int> dims = {1, 2, 5, 10};
  int realizations = 25;
  double kernel_sigma = 1.0;
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
  std::string task_name = "all";
  Exec exec = Exec::parallel;
};

struct KpcaEvalRow {
  std::string task;
  std::string kernel;
  int k = 0;
  double lda_error = 0;
  double variance_fraction = 0;
  double test_residual = 0;
  int realizations = 0;
};

// Kernel-PCA evaluation of named kernel matrices over seeded stratified
// train/test splits; splits depend only on the seed and realization index, so
// runs over different kernel sets are comparable row by row.
std::vector<KpcaEvalRow> run_kpca_eval_on_kernels(
    const std::vector<std::pair<std::string, Eigen::MatrixXd>>& kernels,
    std::span<const std::string> labels, const KpcaEvalOptions& opt);

// The four standard kernels: expected-linear and expected-rbf under the given
// Gram model, and their plain counterparts through an identity Gram model.
std::vector<KpcaEvalRow> run_kpca_eval(const LabeledDocs& docs,
                                       const GramModel& gram,
                                       const KpcaEvalOptions& opt);

void write_knn_csv(const std::string& path, std::span<const KnnEvalRow> rows,
                   std::uint64_t seed);
void write_kpca_csv(const std::string& path, std::span<const KpcaEvalRow> rows,
                    std::uint64_t seed);

// One-sided sign test: probability of at least `wins` successes among
// wins + losses fair coin flips.
double sign_test_p(int wins, int losses);

}  // namespace semdist
