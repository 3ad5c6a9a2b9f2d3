#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semdist/errors.hpp"
#include "semdist/geometry.hpp"

namespace semdist {

struct TokenizeOptions {
  bool stem = false;         // Porter-style suffix stripping
  std::size_t min_len = 2;   // tokens shorter than this are dropped
};

// Lowercases, splits on any non-alphabetic byte, drops short tokens and
// optionally stems. An empty result is allowed.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizeOptions& opt = {});

// Porter's suffix-stripping algorithm for English ("databases" -> "databas").
std::string porter_stem(std::string word);

class Vocabulary {
 public:
  // Returns the existing id when the term is already present.
  WordId add(const std::string& term);
  std::optional<WordId> id_of(std::string_view term) const;
  const std::string& term(WordId id) const;
  WordId size() const { return static_cast<WordId>(terms_.size()); }
  std::int64_t doc_freq(WordId id) const { return doc_freq_[id]; }
  void bump_doc_freq(WordId id) { ++doc_freq_[id]; }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;  // ids are contiguous from 0
  std::unordered_map<std::string, WordId> index_;
  std::vector<std::int64_t> doc_freq_;
};

struct Document {
  std::string id;
  std::vector<WordId> tokens;  // length >= 1 for retained documents
  std::optional<std::string> label;
};

// Sparse token counts of one document.
struct Histogram {
  std::vector<std::pair<WordId, std::int64_t>> counts;  // sorted by id
  std::int64_t total = 0;

  // Normalized counts: the maximum-likelihood multinomial estimate.
  SimplexPoint to_simplex(WordId dim) const;
};

Histogram histogram(std::span<const WordId> tokens);  // EmptyDocument
Histogram histogram(const Document& doc);

struct RawDoc {
  std::string id;
  std::optional<std::string> label;
  std::string text;
};

struct Corpus {
  std::vector<Document> documents;
  Vocabulary vocabulary;
  std::vector<SparseVec> tf;         // per document, sums to 1
  std::vector<std::string> dropped;  // ids of documents with no retained tokens
};

// Builds the vocabulary over retained tokens and the row-normalized term
// frequency table. Documents that end up empty are dropped and reported in
// Corpus::dropped. Throws EmptyCorpus when nothing survives.
Corpus build_corpus(std::span<const RawDoc> docs, const TokenizeOptions& opt = {});

// One document per line: id <TAB> label <TAB> text, UTF-8. Label "-" means
// unlabeled. Lines starting with '#' are skipped.
std::vector<RawDoc> read_corpus_tsv(const std::string& path);
void write_corpus_tsv(const std::string& path, std::span<const RawDoc> docs);

// Tokenizes raw text against a frozen vocabulary; unseen tokens are skipped
// and counted.
struct MappedDoc {
  Histogram hist;
  std::vector<WordId> tokens;
  std::int64_t skipped = 0;
};
MappedDoc map_to_vocabulary(std::string_view text, const Vocabulary& vocab,
                            const TokenizeOptions& opt);  // EmptyDocument

}  // namespace semdist
