#pragma once

#include <cstdint>
#include <span>

#include "semdist/diffusion.hpp"
#include "semdist/rng.hpp"

namespace semdist {

// G = T·Tᵀ cached for the closed-form expected metrics; same block layout as
// the translation matrix, with excluded words as implicit identity rows.
struct GramModel {
  Eigen::MatrixXd block;            // k×k, symmetric PSD
  std::vector<WordId> included;
  std::vector<WordId> block_index;  // vocabulary id -> block position, -1 if excluded

  WordId vocab_size() const { return static_cast<WordId>(block_index.size()); }
  double at(WordId u, WordId v) const {
    WordId bu = block_index[u], bv = block_index[v];
    if (bu < 0 || bv < 0) return u == v ? 1.0 : 0.0;
    return block(bu, bv);
  }
  double diag(WordId u) const {
    WordId bu = block_index[u];
    return bu < 0 ? 1.0 : block(bu, bu);
  }
  static GramModel identity(WordId vocab_size);
};

GramModel precompute_gram(const TranslationModel& T, Exec exec = Exec::parallel);

// E⟨γ(y), γ(y)⟩ over one random translation y of x: the same-copy inner
// product, which carries the +1/N term.
double expected_self_inner(const Histogram& x, const GramModel& gram);

// Closed-form E‖γ(y) − γ(z)‖² over independent random translations y of x and
// z of w. Evaluated through count vectors: Σ_{i≠j} G_{x_i,x_j} = cᵀGc − Σ_v
// c_v G_vv, never through token positions.
double expected_sq_l2(const Histogram& x, const Histogram& w,
                      const GramModel& gram);  // VocabMismatch

// E⟨γ(y), γ(z)⟩ with independent translation copies, also when x = w; Gram
// matrices built from it are positive semidefinite.
double expected_linear_kernel(const Histogram& x, const Histogram& w,
                              const GramModel& gram);

// exp(-E‖γ(y) − γ(z)‖² / σ²), in (0, 1].
double expected_rbf_kernel(const Histogram& x, const Histogram& w,
                           const GramModel& gram, double sigma_k);

// Replaces every token independently by a draw from its translation row.
// Length-preserving and deterministic given the seed.
Document sample_translation(const Document& doc, const TranslationModel& T,
                            std::uint64_t seed);

// Monte-Carlo estimate of E‖γ(y) − γ(z)‖² with its standard error: the
// sampling oracle for the closed form above.
struct McEstimate {
  double mean = 0;
  double std_err = 0;
};
McEstimate mc_expected_sq_l2(const Histogram& x, const Histogram& w,
                             const TranslationModel& T, std::int64_t samples,
                             std::uint64_t seed, Exec exec = Exec::parallel);

// Pairwise matrices over a document set; every entry is computed once and
// mirrored, so results are exactly symmetric and independent of Exec.
Eigen::MatrixXd pairwise_expected_sq_l2(std::span<const Histogram> docs,
                                        const GramModel& gram,
                                        Exec exec = Exec::parallel);
Eigen::MatrixXd pairwise_expected_linear(std::span<const Histogram> docs,
                                         const GramModel& gram,
                                         Exec exec = Exec::parallel);
Eigen::MatrixXd pairwise_expected_rbf(std::span<const Histogram> docs,
                                      const GramModel& gram, double sigma_k,
                                      Exec exec = Exec::parallel);

// The same metrics computed directly from normalized histograms, bypassing
// the Gram model entirely; used as the plain baselines and as the independent
// route in verification.
Eigen::MatrixXd pairwise_plain_sq_l2(std::span<const Histogram> docs, WordId dim,
                                     Exec exec = Exec::parallel);
Eigen::MatrixXd pairwise_plain_linear(std::span<const Histogram> docs, WordId dim,
                                      Exec exec = Exec::parallel);
Eigen::MatrixXd pairwise_plain_rbf(std::span<const Histogram> docs, WordId dim,
                                   double sigma_k, Exec exec = Exec::parallel);

}  // namespace semdist
