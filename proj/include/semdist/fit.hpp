#pragma once

#include "semdist/config.hpp"
#include "semdist/contextual.hpp"
#include "semdist/model_io.hpp"

namespace semdist {

struct FitResult {
  Model model;
  ContextualModel contextual;
  double sigma_used = 0;
  double eig_min = 0;
  double eig_max = 0;
};

// Full pipeline: contextual distributions -> word graph -> normalized
// Laplacian -> heat kernel at time t -> row-stochastic translation -> Gram
// cache. Deterministic given (corpus, config).
FitResult fit_model(const Corpus& corpus, const RunConfig& config,
                    Exec exec = Exec::parallel);

// Re-tokenizes raw documents against a frozen vocabulary (unseen tokens are
// skipped, empty documents dropped) and recomputes the frequency table.
Corpus rebuild_with_vocabulary(std::span<const RawDoc> docs,
                               const Vocabulary& vocab,
                               const TokenizeOptions& opt);

}  // namespace semdist
