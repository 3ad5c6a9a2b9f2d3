// Compares the serial reference implementations of the data-parallel kernels
// against their OpenMP versions on synthetic inputs and reports timings.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "semdist/contextual.hpp"
#include "semdist/diffusion.hpp"
#include "semdist/expected.hpp"
#include "semdist/rng.hpp"
#include "semdist/synthetic.hpp"

namespace {

using namespace semdist;

double seconds(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-26s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const int scale = argc > 1 ? std::stoi(argv[1]) : 1;

  SyntheticCorpus synthetic = make_synonym_corpus(7);
  std::vector<RawDoc> raw = synthetic.docs;
  for (int s = 1; s < scale; ++s)
    for (std::size_t i = 0; i < synthetic.docs.size(); ++i) {
      RawDoc copy = synthetic.docs[i];
      copy.id += "-" + std::to_string(s);
      raw.push_back(std::move(copy));
    }
  Corpus corpus = build_corpus(raw, {});
  std::printf("corpus: %zu documents, %d words\n\n", corpus.documents.size(),
              corpus.vocabulary.size());
  std::printf("%-26s %11s %11s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  ContextualModel contextual;
  double t_serial = seconds([&] { contextual = estimate_contextual(corpus, Exec::serial); });
  double t_par = seconds([&] { contextual = estimate_contextual(corpus, Exec::parallel); });
  report("contextual estimation", t_serial, t_par);

  std::vector<WordId> excluded = top_doc_freq_ids(corpus.vocabulary, 30);
  std::vector<WordId> included =
      complement_ids(corpus.vocabulary.size(), excluded);
  WordGraph graph;
  t_serial = seconds([&] { graph = edge_weights(contextual, 0.5, included, Exec::serial); });
  t_par = seconds([&] { graph = edge_weights(contextual, 0.5, included, Exec::parallel); });
  report("edge weights", t_serial, t_par);

  LaplacianSpectrum spectrum = normalized_laplacian(graph);
  Eigen::MatrixXd heat;
  t_serial = seconds([&] { heat = heat_kernel(spectrum, 1.0, Exec::serial); });
  t_par = seconds([&] { heat = heat_kernel(spectrum, 1.0, Exec::parallel); });
  report("heat kernel", t_serial, t_par);

  TranslationModel translation =
      make_translation(heat, excluded, corpus.vocabulary.size(), 1.0, 0.5);
  GramModel gram;
  t_serial = seconds([&] { gram = precompute_gram(translation, Exec::serial); });
  t_par = seconds([&] { gram = precompute_gram(translation, Exec::parallel); });
  report("gram precompute", t_serial, t_par);

  std::vector<Histogram> hists;
  for (const Document& doc : corpus.documents) hists.push_back(histogram(doc));
  Eigen::MatrixXd dists;
  t_serial = seconds([&] { dists = pairwise_expected_sq_l2(hists, gram, Exec::serial); });
  t_par = seconds([&] { dists = pairwise_expected_sq_l2(hists, gram, Exec::parallel); });
  report("pairwise expected L2", t_serial, t_par);

  McEstimate est;
  t_serial = seconds([&] {
    est = mc_expected_sq_l2(hists[0], hists[1], translation, 100000, 42, Exec::serial);
  });
  t_par = seconds([&] {
    est = mc_expected_sq_l2(hists[0], hists[1], translation, 100000, 42, Exec::parallel);
  });
  report("monte carlo (1e5)", t_serial, t_par);
  std::printf("\nmc check: mean %.6f +- %.6f vs closed form %.6f\n", est.mean,
              est.std_err, expected_sq_l2(hists[0], hists[1], gram));
  return 0;
}
