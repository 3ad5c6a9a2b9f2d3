#include "semdist/fit.hpp"

namespace semdist {

FitResult fit_model(const Corpus& corpus, const RunConfig& config, Exec exec) {
  FitResult result;
  result.contextual = estimate_contextual(corpus, exec);

  const WordId vocab_size = corpus.vocabulary.size();
  int n_excluded = config.exclude_top >= 0
                       ? config.exclude_top
                       : default_exclusion_count(vocab_size);
  std::vector<WordId> excluded = top_doc_freq_ids(corpus.vocabulary, n_excluded);
  std::vector<WordId> included = complement_ids(vocab_size, excluded);
  if (included.empty())
    throw UsageError("exclusion leaves no word to translate");

  double sigma = config.sigma > 0
                     ? config.sigma
                     : default_sigma(result.contextual, included, config.seed);
  result.sigma_used = sigma;

  WordGraph graph = edge_weights(result.contextual, sigma, included, exec);
  if (config.sparsify_k > 0) sparsify(graph, config.sparsify_k);
  LaplacianSpectrum spectrum = normalized_laplacian(graph);
  result.eig_min = spectrum.eigenvalues(0);
  result.eig_max = spectrum.eigenvalues(spectrum.eigenvalues.size() - 1);

  Eigen::MatrixXd heat = heat_kernel(spectrum, config.t, exec);
  result.model.translation =
      make_translation(heat, excluded, vocab_size, config.t, sigma);
  result.model.gram = precompute_gram(result.model.translation, exec);
  result.model.vocab = corpus.vocabulary;
  return result;
}

Corpus rebuild_with_vocabulary(std::span<const RawDoc> docs,
                               const Vocabulary& vocab,
                               const TokenizeOptions& opt) {
  Corpus corpus;
  corpus.vocabulary = vocab;
  for (const RawDoc& raw : docs) {
    try {
      MappedDoc mapped = map_to_vocabulary(raw.text, vocab, opt);
      Document doc;
      doc.id = raw.id;
      doc.label = raw.label;
      doc.tokens = std::move(mapped.tokens);
      corpus.documents.push_back(std::move(doc));

      SparseVec row;
      row.reserve(mapped.hist.counts.size());
      double n = static_cast<double>(mapped.hist.total);
      for (const auto& [id, c] : mapped.hist.counts)
        row.emplace_back(id, static_cast<double>(c) / n);
      corpus.tf.push_back(std::move(row));
    } catch (const EmptyDocument&) {
      corpus.dropped.push_back(raw.id);
    }
  }
  if (corpus.documents.empty())
    throw EmptyCorpus("no document matches the model vocabulary");
  return corpus;
}

}  // namespace semdist
