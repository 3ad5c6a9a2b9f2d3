#pragma once

#include "semdist/corpus.hpp"
#include "semdist/exec.hpp"

namespace semdist {

// Per-word co-occurrence distributions: row w is the distribution over words
// appearing in the same documents as w, with documents weighted by the
// relative frequency of w. Rows are normalized simplex points by
// construction because each document's frequencies sum to one.
struct ContextualModel {
  std::vector<SparseVec> rows;  // one per vocabulary word, sorted by id
  Vocabulary vocab;

  WordId dim() const { return static_cast<WordId>(rows.size()); }
  SimplexPoint row(WordId w) const;
};

ContextualModel estimate_contextual(const Corpus& corpus,
                                    Exec exec = Exec::parallel);  // EmptyCorpus

SimplexPoint contextual_row(const ContextualModel& model, WordId w);  // UnknownWord
SimplexPoint contextual_row(const ContextualModel& model, std::string_view word);

}  // namespace semdist
