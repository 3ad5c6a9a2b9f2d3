#include <doctest.h>

#include <fstream>
#include <sstream>

#include "semdist/config.hpp"
#include "semdist/eval.hpp"
#include "semdist/rng.hpp"

using namespace semdist;

TEST_CASE("config files parse, validate and reject unknown keys") {
  std::string path = "/tmp/semdist_config_test.cfg";
  {
    std::ofstream out(path);
    out << "# a comment\n"
        << "corpus = data/x.tsv\n"
        << "t = 2.5\n"
        << "exclude_top = 150\n"
        << "stem = true\n"
        << "kpca_dims = 1, 2, 5\n"
        << "train_sizes = 4,8\n";
  }
  RunConfig config = load_config(path);
  CHECK(config.corpus == "data/x.tsv");
  CHECK(config.t == 2.5);
  CHECK(config.exclude_top == 150);
  CHECK(config.stem);
  CHECK(config.kpca_dims == std::vector<int>{1, 2, 5});
  CHECK(config.train_sizes == std::vector<int>{4, 8});
  CHECK(config.seed == 42);  // default untouched

  RunConfig base;
  CHECK_THROWS_AS(apply_config_entry(base, "no_such_key", "1"), UsageError);
  CHECK_THROWS_AS(apply_config_entry(base, "t", "-1"), UsageError);
  CHECK_THROWS_AS(apply_config_entry(base, "t", "abc"), UsageError);
  CHECK_THROWS_AS(apply_config_entry(base, "stem", "maybe"), UsageError);
  CHECK_THROWS_AS(apply_config_entry(base, "knn_k", "0"), UsageError);
  CHECK_THROWS_AS(load_config("/tmp/definitely_missing.cfg"), UsageError);

  {
    std::ofstream out(path);
    out << "unknown_key = 1\n";
  }
  CHECK_THROWS_AS(load_config(path), UsageError);
}

namespace {

// Two noisy classes over disjoint halves of a small vocabulary.
LabeledDocs toy_docs(int per_class, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LabeledDocs docs;
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < per_class; ++i) {
      std::vector<WordId> tokens;
      for (int j = 0; j < 10; ++j) {
        WordId base = static_cast<WordId>(rng.next_below(4));
        tokens.push_back(rng.next_double() < 0.75 ? base + 4 * cls
                                                  : static_cast<WordId>(rng.next_below(8)));
      }
      docs.hists.push_back(histogram(std::span<const WordId>(tokens)));
      docs.labels.push_back(cls ? "pos" : "neg");
      docs.ids.push_back("d" + std::to_string(cls) + "-" + std::to_string(i));
    }
  }
  return docs;
}

}  // namespace

TEST_CASE("knn eval emits one row per task, size and metric") {
  LabeledDocs docs = toy_docs(30, 5);
  GramModel gram = GramModel::identity(8);
  KnnEvalOptions opt;
  opt.train_sizes = {5, 10};
  opt.test_per_class = 8;
  opt.realizations = 6;
  opt.k = 1;
  std::vector<KnnEvalRow> rows = run_knn_eval(docs, gram, opt);
  CHECK(rows.size() == 2 * 2 * 2);  // tasks x train sizes x metrics

  // identity translation: both metrics see identical distances
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].metric == "l2");
    CHECK(rows[i + 1].metric == "expected-l2");
    CHECK(rows[i].mean_error == doctest::Approx(rows[i + 1].mean_error));
    CHECK(rows[i].task == rows[i + 1].task);
    CHECK(rows[i].realizations == 6);
  }

  // deterministic given the seed
  std::vector<KnnEvalRow> again = run_knn_eval(docs, gram, opt);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].mean_error == again[i].mean_error);
    CHECK(rows[i].sd == again[i].sd);
  }

  opt.train_sizes = {1000};
  CHECK_THROWS_AS(run_knn_eval(docs, gram, opt), InsufficientClassData);
}

TEST_CASE("kpca eval rows cover kernels and dimensions") {
  LabeledDocs docs = toy_docs(25, 6);
  GramModel gram = GramModel::identity(8);
  KpcaEvalOptions opt;
  opt.dims = {1, 2, 4};
  opt.realizations = 4;
  opt.kernel_sigma = 1.0;
  std::vector<KpcaEvalRow> rows = run_kpca_eval(docs, gram, opt);
  CHECK(rows.size() == 4 * 3);

  for (const KpcaEvalRow& row : rows) {
    CHECK(row.lda_error >= 0.0);
    CHECK(row.lda_error <= 1.0);
    CHECK(row.variance_fraction > 0.0);
    CHECK(row.variance_fraction <= 1.0);
    CHECK(row.test_residual >= 0.0);
    CHECK(row.realizations == 4);
  }

  // variance fraction is monotone in k within each kernel
  for (int kernel = 0; kernel < 4; ++kernel) {
    double previous = 0;
    for (int d = 0; d < 3; ++d) {
      const KpcaEvalRow& row = rows[kernel * 3 + d];
      CHECK(row.variance_fraction >= previous);
      previous = row.variance_fraction;
    }
  }

  // identity gram: expected kernels coincide with the plain ones
  for (int d = 0; d < 3; ++d) {
    CHECK(rows[0 * 3 + d].lda_error == doctest::Approx(rows[1 * 3 + d].lda_error));
    CHECK(rows[2 * 3 + d].variance_fraction ==
          doctest::Approx(rows[3 * 3 + d].variance_fraction));
  }
}

TEST_CASE("csv writers record the seed and a header") {
  std::vector<KnnEvalRow> rows{{"task", 10, "l2", 0.25, 0.05, 40}};
  std::string path = "/tmp/semdist_knn.csv";
  write_knn_csv(path, rows, 42);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# seed=42");
  std::getline(in, line);
  CHECK(line == "task,train_size,metric,mean_error,sd,realizations");
  std::getline(in, line);
  CHECK(line == "task,10,l2,0.25,0.05,40");

  std::vector<KpcaEvalRow> krows{{"all", "expected-linear", 2, 0.5, 0.125, 0.75, 25}};
  std::string kpath = "/tmp/semdist_kpca.csv";
  write_kpca_csv(kpath, krows, 7);
  std::ifstream kin(kpath);
  std::getline(kin, line);
  CHECK(line == "# seed=7");
  std::getline(kin, line);
  CHECK(line == "task,kernel,k,lda_error,variance_fraction,test_residual,realizations");
  std::getline(kin, line);
  CHECK(line == "all,expected-linear,2,0.5,0.125,0.75,25");
}

TEST_CASE("sign test tail probabilities") {
  CHECK(sign_test_p(0, 0) == doctest::Approx(1.0));
  CHECK(sign_test_p(1, 0) == doctest::Approx(0.5));
  CHECK(sign_test_p(0, 1) == doctest::Approx(1.0));
  CHECK(sign_test_p(2, 0) == doctest::Approx(0.25));
  // 26 wins of 40 is just under the 5% level
  CHECK(sign_test_p(26, 14) < 0.05);
  CHECK(sign_test_p(25, 15) > 0.05);
  // symmetric binomial: at least half is more likely than not
  CHECK(sign_test_p(20, 20) > 0.5);
}
