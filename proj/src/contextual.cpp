#include "semdist/contextual.hpp"

#include <algorithm>

namespace semdist {

SimplexPoint ContextualModel::row(WordId w) const {
  SimplexPoint p;
  p.dim = dim();
  p.coords = rows.at(static_cast<std::size_t>(w));
  return p;
}

ContextualModel estimate_contextual(const Corpus& corpus, Exec exec) {
  if (corpus.documents.empty()) throw EmptyCorpus("empty corpus");
  const WordId m = corpus.vocabulary.size();

  // Inverted index: word -> (document, tf) postings.
  std::vector<std::vector<std::pair<std::int32_t, double>>> postings(m);
  for (std::int32_t d = 0; d < static_cast<std::int32_t>(corpus.tf.size()); ++d)
    for (const auto& [w, f] : corpus.tf[d]) postings[w].emplace_back(d, f);

  ContextualModel model;
  model.vocab = corpus.vocabulary;
  model.rows.resize(m);

  // Row w accumulates tf(u,d)·tf(w,d) over documents containing w; the
  // normalizer is the sum of tf(w,·) because every document row sums to one.
  par_for(m, exec, [&](std::int64_t wi) {
    const WordId w = static_cast<WordId>(wi);
    if (postings[w].empty()) return;  // word absent from this corpus
    thread_local std::vector<double> accum;
    thread_local std::vector<WordId> touched;
    if (accum.size() < static_cast<std::size_t>(m)) accum.resize(m, 0.0);

    double denom = 0.0;
    for (const auto& [d, fw] : postings[w]) {
      denom += fw;
      for (const auto& [u, fu] : corpus.tf[d]) {
        if (accum[u] == 0.0) touched.push_back(u);
        accum[u] += fu * fw;
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec row;
    row.reserve(touched.size());
    for (WordId u : touched) {
      row.emplace_back(u, accum[u] / denom);
      accum[u] = 0.0;
    }
    touched.clear();
    model.rows[w] = std::move(row);
  });
  return model;
}

SimplexPoint contextual_row(const ContextualModel& model, WordId w) {
  if (w < 0 || w >= model.dim())
    throw UnknownWord("word id out of range: " + std::to_string(w));
  return model.row(w);
}

SimplexPoint contextual_row(const ContextualModel& model, std::string_view word) {
  auto id = model.vocab.id_of(word);
  if (!id) throw UnknownWord("unknown word: " + std::string(word));
  return model.row(*id);
}

}  // namespace semdist
