#include "semdist/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

namespace semdist {

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizeOptions& opt) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= opt.min_len) {
      if (opt.stem) cur = porter_stem(std::move(cur));
      out.push_back(std::move(cur));
    }
    cur.clear();
  };
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && std::isalpha(uc)) {
      cur.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!cur.empty()) {
      flush();
    }
  }
  if (!cur.empty()) flush();
  return out;
}

WordId Vocabulary::add(const std::string& term) {
  auto it = index_.find(term);
  if (it != index_.end()) return it->second;
  WordId id = static_cast<WordId>(terms_.size());
  terms_.push_back(term);
  index_.emplace(term, id);
  doc_freq_.push_back(0);
  return id;
}

std::optional<WordId> Vocabulary::id_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::term(WordId id) const {
  return terms_.at(static_cast<std::size_t>(id));
}

SimplexPoint Histogram::to_simplex(WordId dim) const {
  SimplexPoint p;
  p.dim = dim;
  p.coords.reserve(counts.size());
  double n = static_cast<double>(total);
  for (const auto& [id, c] : counts)
    p.coords.emplace_back(id, static_cast<double>(c) / n);
  return p;
}

Histogram histogram(std::span<const WordId> tokens) {
  if (tokens.empty()) throw EmptyDocument("cannot build histogram: no tokens");
  std::map<WordId, std::int64_t> counts;
  for (WordId t : tokens) ++counts[t];
  Histogram h;
  h.counts.assign(counts.begin(), counts.end());
  h.total = static_cast<std::int64_t>(tokens.size());
  return h;
}

Histogram histogram(const Document& doc) { return histogram(std::span(doc.tokens)); }

Corpus build_corpus(std::span<const RawDoc> docs, const TokenizeOptions& opt) {
  Corpus corpus;
  for (const RawDoc& raw : docs) {
    std::vector<std::string> tokens = tokenize(raw.text, opt);
    if (tokens.empty()) {
      corpus.dropped.push_back(raw.id);
      continue;
    }
    Document doc;
    doc.id = raw.id;
    doc.label = raw.label;
    doc.tokens.reserve(tokens.size());
    for (const std::string& t : tokens)
      doc.tokens.push_back(corpus.vocabulary.add(t));
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty())
    throw EmptyCorpus("no document survived tokenization");

  corpus.tf.reserve(corpus.documents.size());
  for (const Document& doc : corpus.documents) {
    Histogram h = histogram(doc);
    SparseVec row;
    row.reserve(h.counts.size());
    double n = static_cast<double>(h.total);
    for (const auto& [id, c] : h.counts) {
      row.emplace_back(id, static_cast<double>(c) / n);
      corpus.vocabulary.bump_doc_freq(id);
    }
    corpus.tf.push_back(std::move(row));
  }
  return corpus;
}

std::vector<RawDoc> read_corpus_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  std::vector<RawDoc> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab1 = line.find('\t');
    std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      throw DataError("malformed corpus line " + std::to_string(line_no) +
                      " in " + path + " (expected id<TAB>label<TAB>text)");
    RawDoc doc;
    doc.id = line.substr(0, tab1);
    std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (label != "-") doc.label = label;
    doc.text = line.substr(tab2 + 1);
    docs.push_back(std::move(doc));
  }
  return docs;
}

void write_corpus_tsv(const std::string& path, std::span<const RawDoc> docs) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const RawDoc& doc : docs)
    out << doc.id << '\t' << (doc.label ? *doc.label : std::string("-"))
        << '\t' << doc.text << '\n';
}

MappedDoc map_to_vocabulary(std::string_view text, const Vocabulary& vocab,
                            const TokenizeOptions& opt) {
  MappedDoc mapped;
  for (const std::string& t : tokenize(text, opt)) {
    if (auto id = vocab.id_of(t)) {
      mapped.tokens.push_back(*id);
    } else {
      ++mapped.skipped;
    }
  }
  if (mapped.tokens.empty())
    throw EmptyDocument("no token of the document is in the vocabulary");
  mapped.hist = histogram(std::span(mapped.tokens));
  return mapped;
}

}  // namespace semdist
