#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semdist/corpus.hpp"

namespace semdist {

// Generated benchmark corpora. The synonym corpus plants, per class, a set of
// word pairs whose two members never appear in the same plain document but
// share per-pair context words, so a fitted translation model bridges them:
// variant 'A' documents use the first member of each pair, variant 'B'
// documents the second, and a few mixed documents ('M') carry both. The null
// corpus has per-class topic words with no planted pair structure.
struct SyntheticCorpus {
  std::vector<RawDoc> docs;
  std::vector<char> variant;  // per doc: 'A', 'B', 'M', or '-' for the null corpus
  std::vector<std::string> labels;                             // class names
  std::vector<std::pair<std::string, std::string>> synonym_pairs;
};

SyntheticCorpus make_synonym_corpus(std::uint64_t seed);
SyntheticCorpus make_null_corpus(std::uint64_t seed);

}  // namespace semdist
