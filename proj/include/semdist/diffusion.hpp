#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semdist/contextual.hpp"

namespace semdist {

using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Word-similarity graph over the non-excluded vocabulary. Exactly symmetric,
// unit diagonal; the complete graph has all entries in (0, 1].
struct WordGraph {
  Eigen::MatrixXd weights;
  double sigma = 0;
  std::vector<WordId> word_ids;  // row/col -> vocabulary id, ascending
};

// e(u,v) = exp(-arccos²(Σ_w √(q_u(w) q_v(w))) / σ²) for all included pairs.
WordGraph edge_weights(const ContextualModel& model, double sigma,
                       std::span<const WordId> included,
                       Exec exec = Exec::parallel);

// A·Aᵀ over the rows of A; each entry is computed once and mirrored, so the
// result is exactly symmetric.
Eigen::MatrixXd symmetric_product(const RowMatrixXd& A,
                                  Exec exec = Exec::parallel);

// Keeps the top_k strongest off-diagonal weights per row; an edge survives
// when either endpoint keeps it. top_k <= 0 leaves the graph complete.
void sparsify(WordGraph& graph, int top_k);

// Median of the arccos-scale distances over up to `pairs` sampled word pairs;
// a data-driven default for the edge-weight bandwidth.
double default_sigma(const ContextualModel& model,
                     std::span<const WordId> included, std::uint64_t seed,
                     int pairs = 1000);

struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending, inside [0, 2] up to round-off
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
  Eigen::VectorXd degree;
};

// Symmetric eigendecomposition of D^{-1/2} (D - E) D^{-1/2}; the spectrum is
// kept so several diffusion times can reuse one decomposition.
LaplacianSpectrum normalized_laplacian(const WordGraph& graph);  // EigenFailure

// H = Q diag(exp(-t λ)) Qᵀ, exactly the identity at t = 0. Entries below
// -1e-10 raise NegativeEntry; tiny negative round-off is clamped to 0.
Eigen::MatrixXd heat_kernel(const LaplacianSpectrum& spectrum, double t,
                            Exec exec = Exec::parallel);

// Row-stochastic word-to-word translation probabilities over the included
// vocabulary; excluded words translate to themselves with probability one and
// receive no incoming mass.
struct TranslationModel {
  RowMatrixXd block;                // k×k, rows sum to 1
  std::vector<WordId> included;     // block position -> vocabulary id
  std::vector<WordId> block_index;  // vocabulary id -> block position, -1 if excluded
  std::vector<WordId> excluded;     // ascending
  double t = 0;
  double sigma = 0;

  WordId vocab_size() const { return static_cast<WordId>(block_index.size()); }
  bool is_excluded(WordId id) const { return block_index[id] < 0; }
  double at(WordId u, WordId w) const;
  static TranslationModel identity(WordId vocab_size);
};

TranslationModel make_translation(const Eigen::MatrixXd& H,
                                  std::span<const WordId> excluded,
                                  WordId full_vocab_size, double t = 0,
                                  double sigma = 0);  // ZeroRow

struct Neighbor {
  WordId id;
  std::string word;
  double weight;
};

// The n words with the largest edge weight to `word`, excluding the word
// itself; ties broken by vocabulary id ascending.
std::vector<Neighbor> nearest_words(const ContextualModel& model,
                                    std::string_view word, int n, double sigma,
                                    std::span<const WordId> included);  // UnknownWord

// Ids of the n most document-frequent terms (ties by id ascending): the
// default translation exclusion set.
std::vector<WordId> top_doc_freq_ids(const Vocabulary& vocab, int n);
int default_exclusion_count(WordId vocab_size);  // min(2000, 10% of vocabulary)
std::vector<WordId> complement_ids(WordId vocab_size,
                                   std::span<const WordId> excluded);

}  // namespace semdist
