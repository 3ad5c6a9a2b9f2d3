// Command line front end: fit a translation model from a corpus, inspect
// nearest words and sampled translations, compute document distances, and run
// the nearest-neighbor / kernel-PCA evaluation harnesses.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "semdist/eval.hpp"
#include "semdist/fit.hpp"

namespace {

using namespace semdist;

struct CommonArgs {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool serial = false;
};

// Every flag funnels through the config parser so validation is uniform and
// flags override file values.
void add_override_option(CLI::App* cmd, CommonArgs& args,
                         const std::string& flag, const std::string& key,
                         const std::string& help) {
  cmd->add_option_function<std::string>(
      flag,
      [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); },
      help);
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key = value config file");
  cmd->add_flag("--serial", args.serial, "run kernels single-threaded");
  add_override_option(cmd, args, "--seed", "seed", "root random seed");
  add_override_option(cmd, args, "--stem", "stem", "Porter stemming (true/false)");
  add_override_option(cmd, args, "--min-token-len", "min_token_len",
                      "minimum token length");
}

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config;
  if (!args.config_path.empty()) config = load_config(args.config_path);
  for (const auto& [key, value] : args.overrides)
    apply_config_entry(config, key, value);
  return config;
}

TokenizeOptions tokenize_options(const RunConfig& config) {
  TokenizeOptions opt;
  opt.stem = config.stem;
  opt.min_len = static_cast<std::size_t>(config.min_token_len);
  return opt;
}

Exec exec_of(const CommonArgs& args) {
  return args.serial ? Exec::serial : Exec::parallel;
}

int cmd_fit(const CommonArgs& args) {
  RunConfig config = resolve_config(args);
  if (config.corpus.empty()) throw UsageError("fit requires --corpus");
  if (config.model_path.empty()) throw UsageError("fit requires --out");

  auto start = std::chrono::steady_clock::now();
  std::vector<RawDoc> raw = read_corpus_tsv(config.corpus);
  Corpus corpus = build_corpus(raw, tokenize_options(config));
  for (const std::string& id : corpus.dropped)
    std::cerr << "warning: dropped empty document " << id << "\n";

  FitResult fit = fit_model(corpus, config, exec_of(args));
  save_model(config.model_path, fit.model);
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();

  std::printf("vocabulary_size\t%d\n", corpus.vocabulary.size());
  std::printf("excluded\t%zu\n", fit.model.translation.excluded.size());
  std::printf("sigma\t%.12g\n", fit.sigma_used);
  std::printf("eigenvalue_min\t%.12g\n", fit.eig_min);
  std::printf("eigenvalue_max\t%.12g\n", fit.eig_max);
  std::printf("wall_time_s\t%.3f\n", wall);
  std::printf("model\t%s\n", config.model_path.c_str());
  return 0;
}

int cmd_neighbors(const CommonArgs& args, const std::string& word, int count) {
  RunConfig config = resolve_config(args);
  if (config.model_path.empty()) throw UsageError("neighbors requires --model");
  if (config.corpus.empty()) throw UsageError("neighbors requires --corpus");

  Model model = load_model(config.model_path);
  std::vector<RawDoc> raw = read_corpus_tsv(config.corpus);
  Corpus corpus =
      rebuild_with_vocabulary(raw, model.vocab, tokenize_options(config));
  ContextualModel contextual = estimate_contextual(corpus, exec_of(args));

  std::vector<Neighbor> neighbors =
      nearest_words(contextual, word, count, model.translation.sigma,
                    model.translation.included);
  std::printf("rank\tword\tweight\n");
  for (std::size_t i = 0; i < neighbors.size(); ++i)
    std::printf("%zu\t%s\t%.6f\n", i + 1, neighbors[i].word.c_str(),
                neighbors[i].weight);
  return 0;
}

int cmd_dist(const CommonArgs& args, const std::string& metric,
             const std::string& text_a, const std::string& text_b) {
  RunConfig config = resolve_config(args);
  if (config.model_path.empty()) throw UsageError("dist requires --model");

  Model model = load_model(config.model_path);
  TokenizeOptions opt = tokenize_options(config);
  MappedDoc a = map_to_vocabulary(text_a, model.vocab, opt);
  MappedDoc b = map_to_vocabulary(text_b, model.vocab, opt);
  if (a.skipped + b.skipped > 0)
    std::cerr << "note: " << a.skipped + b.skipped
              << " tokens outside the model vocabulary were skipped\n";

  const WordId dim = model.vocab.size();
  double value = 0;
  if (metric == "l2") {
    value = euclidean_sq(a.hist.to_simplex(dim), b.hist.to_simplex(dim));
  } else if (metric == "expected-l2") {
    value = expected_sq_l2(a.hist, b.hist, model.gram);
  } else if (metric == "expected-linear") {
    value = expected_linear_kernel(a.hist, b.hist, model.gram);
  } else if (metric == "expected-rbf") {
    value = expected_rbf_kernel(a.hist, b.hist, model.gram, config.kernel_sigma);
  } else {
    throw UsageError("unknown metric: " + metric);
  }
  std::printf("%.12g\n", value);
  return 0;
}

int cmd_sample(const CommonArgs& args, const std::string& text, int samples) {
  RunConfig config = resolve_config(args);
  if (config.model_path.empty()) throw UsageError("sample requires --model");

  Model model = load_model(config.model_path);
  MappedDoc mapped =
      map_to_vocabulary(text, model.vocab, tokenize_options(config));
  Document doc;
  doc.id = "query";
  doc.tokens = mapped.tokens;
  for (int s = 0; s < samples; ++s) {
    Document translated = sample_translation(doc, model.translation,
                                             mix_seed(config.seed, s));
    std::string line;
    for (std::size_t i = 0; i < translated.tokens.size(); ++i) {
      if (i > 0) line += ' ';
      line += model.vocab.term(translated.tokens[i]);
    }
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

LabeledDocs load_labeled(const RunConfig& config, const Model& model) {
  std::vector<RawDoc> raw = read_corpus_tsv(config.corpus);
  LabeledDocs docs =
      map_labeled_corpus(raw, model.vocab, tokenize_options(config));
  if (docs.dropped_docs > 0)
    std::cerr << "note: skipped " << docs.dropped_docs
              << " unlabeled or out-of-vocabulary documents\n";
  return docs;
}

int cmd_knn_eval(const CommonArgs& args) {
  RunConfig config = resolve_config(args);
  if (config.model_path.empty()) throw UsageError("knn-eval requires --model");
  if (config.corpus.empty()) throw UsageError("knn-eval requires --corpus");

  Model model = load_model(config.model_path);
  LabeledDocs docs = load_labeled(config, model);

  KnnEvalOptions opt;
  opt.train_sizes = config.train_sizes;
  opt.test_per_class = config.test_per_class;
  opt.realizations = config.realizations;
  opt.k = config.knn_k;
  opt.seed = config.seed;
  opt.exec = exec_of(args);
  std::vector<KnnEvalRow> rows = run_knn_eval(docs, model.gram, opt);

  std::filesystem::create_directories(config.out_dir);
  std::string path = config.out_dir + "/knn_eval.csv";
  write_knn_csv(path, rows, config.seed);
  std::printf("wrote\t%s\n", path.c_str());
  return 0;
}

int cmd_kpca_eval(const CommonArgs& args) {
  RunConfig config = resolve_config(args);
  if (config.model_path.empty()) throw UsageError("kpca-eval requires --model");
  if (config.corpus.empty()) throw UsageError("kpca-eval requires --corpus");

  Model model = load_model(config.model_path);
  LabeledDocs docs = load_labeled(config, model);

  KpcaEvalOptions opt;
  opt.dims = config.kpca_dims;
  opt.realizations = config.realizations;
  opt.kernel_sigma = config.kernel_sigma;
  opt.seed = config.seed;
  opt.exec = exec_of(args);
  std::vector<KpcaEvalRow> rows = run_kpca_eval(docs, model.gram, opt);

  std::filesystem::create_directories(config.out_dir);
  std::string path = config.out_dir + "/kpca_eval.csv";
  write_kpca_csv(path, rows, config.seed);
  std::printf("wrote\t%s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-translation document metrics"};
  app.require_subcommand(1);

  CommonArgs fit_args, nbr_args, dist_args, sample_args, knn_args, kpca_args;

  CLI::App* fit = app.add_subcommand("fit", "fit a translation model");
  add_common(fit, fit_args);
  add_override_option(fit, fit_args, "--corpus", "corpus", "corpus TSV file");
  add_override_option(fit, fit_args, "--out", "model", "output model file");
  add_override_option(fit, fit_args, "--sigma", "sigma",
                      "edge-weight bandwidth (0 = median heuristic)");
  add_override_option(fit, fit_args, "--t", "t", "diffusion time");
  add_override_option(fit, fit_args, "--exclude-top", "exclude_top",
                      "exclude the n most document-frequent words");
  add_override_option(fit, fit_args, "--sparsify-k", "sparsify_k",
                      "keep top-k edges per word (0 = complete graph)");

  CLI::App* nbr = app.add_subcommand("neighbors", "most similar words");
  add_common(nbr, nbr_args);
  add_override_option(nbr, nbr_args, "--model", "model", "model file");
  add_override_option(nbr, nbr_args, "--corpus", "corpus", "corpus TSV file");
  std::string nbr_word;
  int nbr_count = 8;
  nbr->add_option("--word", nbr_word, "query word")->required();
  nbr->add_option("-n,--count", nbr_count, "number of neighbors");

  CLI::App* dist = app.add_subcommand("dist", "distance or kernel between two texts");
  add_common(dist, dist_args);
  add_override_option(dist, dist_args, "--model", "model", "model file");
  add_override_option(dist, dist_args, "--kernel-sigma", "kernel_sigma",
                      "RBF kernel bandwidth");
  std::string dist_metric = "expected-l2";
  std::string dist_a, dist_b;
  dist->add_option("--metric", dist_metric,
                   "l2 | expected-l2 | expected-linear | expected-rbf");
  dist->add_option("doc_a", dist_a, "first document text")->required();
  dist->add_option("doc_b", dist_b, "second document text")->required();

  CLI::App* sample = app.add_subcommand("sample", "sample random translations");
  add_common(sample, sample_args);
  add_override_option(sample, sample_args, "--model", "model", "model file");
  std::string sample_text;
  int sample_count = 1;
  sample->add_option("--text", sample_text, "document text")->required();
  sample->add_option("--samples", sample_count, "number of samples");

  CLI::App* knn = app.add_subcommand("knn-eval", "nearest-neighbor error comparison");
  add_common(knn, knn_args);
  add_override_option(knn, knn_args, "--model", "model", "model file");
  add_override_option(knn, knn_args, "--corpus", "corpus", "labeled corpus TSV");
  add_override_option(knn, knn_args, "--out-dir", "out_dir", "output directory");
  add_override_option(knn, knn_args, "--train-sizes", "train_sizes",
                      "comma-separated train sizes per side");
  add_override_option(knn, knn_args, "--test-per-class", "test_per_class",
                      "test documents per side");
  add_override_option(knn, knn_args, "--realizations", "realizations",
                      "number of seeded resamplings");
  add_override_option(knn, knn_args, "--knn-k", "knn_k", "nearest neighbors");

  CLI::App* kpca = app.add_subcommand("kpca-eval", "kernel PCA evaluation");
  add_common(kpca, kpca_args);
  add_override_option(kpca, kpca_args, "--model", "model", "model file");
  add_override_option(kpca, kpca_args, "--corpus", "corpus", "labeled corpus TSV");
  add_override_option(kpca, kpca_args, "--out-dir", "out_dir", "output directory");
  add_override_option(kpca, kpca_args, "--kpca-dims", "kpca_dims",
                      "comma-separated subspace dimensions");
  add_override_option(kpca, kpca_args, "--realizations", "realizations",
                      "number of seeded splits");
  add_override_option(kpca, kpca_args, "--kernel-sigma", "kernel_sigma",
                      "RBF kernel bandwidth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_args);
    if (nbr->parsed()) return cmd_neighbors(nbr_args, nbr_word, nbr_count);
    if (dist->parsed()) return cmd_dist(dist_args, dist_metric, dist_a, dist_b);
    if (sample->parsed()) return cmd_sample(sample_args, sample_text, sample_count);
    if (knn->parsed()) return cmd_knn_eval(knn_args);
    if (kpca->parsed()) return cmd_kpca_eval(kpca_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
