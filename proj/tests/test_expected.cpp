#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "semdist/expected.hpp"

using namespace semdist;

namespace {

TranslationModel full_translation(const Eigen::MatrixXd& rows) {
  TranslationModel model;
  model.block = rows;
  const WordId n = static_cast<WordId>(rows.rows());
  model.block_index.resize(n);
  model.included.resize(n);
  for (WordId i = 0; i < n; ++i) {
    model.block_index[i] = i;
    model.included[i] = i;
  }
  return model;
}

TranslationModel two_word_model() {
  return full_translation(
      (Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.2, 0.8).finished());
}

Histogram make_hist(std::vector<WordId> tokens) {
  return histogram(std::span<const WordId>(tokens));
}

// Dirichlet(1) rows: uniform over the simplex.
TranslationModel random_translation(WordId vocab, SplitMix64& rng) {
  Eigen::MatrixXd rows(vocab, vocab);
  for (WordId i = 0; i < vocab; ++i) {
    double sum = 0;
    for (WordId j = 0; j < vocab; ++j) {
      rows(i, j) = -std::log(1.0 - rng.next_double());
      sum += rows(i, j);
    }
    rows.row(i) /= sum;
  }
  return full_translation(rows);
}

Histogram random_hist(WordId vocab, int max_len, SplitMix64& rng) {
  int len = 1 + static_cast<int>(rng.next_below(max_len));
  std::vector<WordId> tokens;
  for (int i = 0; i < len; ++i)
    tokens.push_back(static_cast<WordId>(rng.next_below(vocab)));
  return make_hist(std::move(tokens));
}

}  // namespace

TEST_CASE("gram precompute") {
  TranslationModel id3 = full_translation(Eigen::MatrixXd::Identity(3, 3));
  GramModel g_id = precompute_gram(id3);
  CHECK(g_id.block.isIdentity(0.0));

  GramModel g2 = precompute_gram(two_word_model());
  CHECK(g2.block(0, 0) == doctest::Approx(0.82).epsilon(1e-14));
  CHECK(g2.block(0, 1) == doctest::Approx(0.26).epsilon(1e-14));
  CHECK(g2.block(1, 0) == g2.block(0, 1));
  CHECK(g2.block(1, 1) == doctest::Approx(0.68).epsilon(1e-14));

  SplitMix64 rng(8);
  GramModel gr = precompute_gram(random_translation(7, rng));
  for (WordId u = 0; u < 7; ++u) {
    CHECK(gr.diag(u) <= 1.0 + 1e-12);  // Cauchy-Schwarz on a stochastic row
    CHECK(gr.diag(u) > 0.0);
  }
  // deterministic row reaches the bound
  Eigen::MatrixXd det(2, 2);
  det << 1, 0, 0, 1;
  CHECK(precompute_gram(full_translation(det)).diag(0) == 1.0);
}

TEST_CASE("gram minors are positive semidefinite") {
  SplitMix64 rng(91);
  GramModel gram = precompute_gram(random_translation(12, rng));
  CHECK((gram.block - gram.block.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::int32_t> pick = sample_without_replacement(12, 5, rng);
    Eigen::MatrixXd minor(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) minor(i, j) = gram.block(pick[i], pick[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(minor);
    CHECK(eig.eigenvalues()(0) >=
          -1e-8 * std::max(1.0, eig.eigenvalues()(4)));
  }
}

TEST_CASE("expected squared distance on the hand instance") {
  GramModel gram = precompute_gram(two_word_model());
  Histogram a = make_hist({0});
  Histogram b = make_hist({1});
  CHECK(expected_sq_l2(a, b, gram) == doctest::Approx(1.48).epsilon(1e-14));
  CHECK(expected_linear_kernel(a, b, gram) == doctest::Approx(0.26).epsilon(1e-14));
  CHECK(expected_rbf_kernel(a, b, gram, 1.0) ==
        doctest::Approx(std::exp(-1.48)).epsilon(1e-12));
  CHECK(expected_rbf_kernel(a, b, gram, 1.0) == doctest::Approx(0.22764).epsilon(1e-4));
}

TEST_CASE("identity translation reduces to plain euclidean") {
  GramModel gram = GramModel::identity(4);
  Histogram ab = make_hist({0, 1});
  CHECK(expected_sq_l2(ab, ab, gram) == 0.0);
  Histogram aa = make_hist({0, 0});
  Histogram bb = make_hist({1, 1});
  CHECK(expected_sq_l2(aa, bb, gram) == doctest::Approx(2.0).epsilon(1e-14));
  Histogram a = make_hist({0});
  CHECK(expected_linear_kernel(a, a, gram) == doctest::Approx(1.0));
  Histogram aab = make_hist({0, 0, 1});
  CHECK(expected_linear_kernel(aab, a, gram) == doctest::Approx(2.0 / 3.0));
  CHECK(expected_rbf_kernel(ab, ab, gram, 1.0) == doctest::Approx(1.0));

  SplitMix64 rng(21);
  GramModel gram6 = GramModel::identity(6);
  for (int i = 0; i < 200; ++i) {
    Histogram x = random_hist(6, 12, rng);
    Histogram w = random_hist(6, 12, rng);
    double expected = expected_sq_l2(x, w, gram6);
    double plain = euclidean_sq(x.to_simplex(6), w.to_simplex(6));
    CHECK(std::abs(expected - plain) <= 1e-12);
  }
}

TEST_CASE("symmetry is exact and values are nonnegative") {
  SplitMix64 rng(33);
  GramModel gram = precompute_gram(random_translation(8, rng));
  for (int i = 0; i < 100; ++i) {
    Histogram x = random_hist(8, 15, rng);
    Histogram w = random_hist(8, 15, rng);
    CHECK(expected_sq_l2(x, w, gram) == expected_sq_l2(w, x, gram));  // bitwise
    CHECK(expected_sq_l2(x, w, gram) >= 0.0);
    CHECK(expected_linear_kernel(x, w, gram) ==
          expected_linear_kernel(w, x, gram));
  }
}

TEST_CASE("distance decomposes into self terms and the linear kernel") {
  SplitMix64 rng(34);
  GramModel gram = precompute_gram(random_translation(9, rng));
  for (int i = 0; i < 100; ++i) {
    Histogram x = random_hist(9, 14, rng);
    Histogram w = random_hist(9, 14, rng);
    double lhs = expected_sq_l2(x, w, gram);
    double rhs = expected_self_inner(x, gram) + expected_self_inner(w, gram) -
                 2.0 * expected_linear_kernel(x, w, gram);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("rbf kernel is monotone in the distance") {
  SplitMix64 rng(35);
  GramModel gram = precompute_gram(random_translation(6, rng));
  Histogram x = random_hist(6, 10, rng);
  Histogram w1 = random_hist(6, 10, rng);
  Histogram w2 = random_hist(6, 10, rng);
  double d1 = expected_sq_l2(x, w1, gram);
  double d2 = expected_sq_l2(x, w2, gram);
  double k1 = expected_rbf_kernel(x, w1, gram, 0.8);
  double k2 = expected_rbf_kernel(x, w2, gram, 0.8);
  CHECK(((d1 <= d2) == (k1 >= k2)));
  CHECK(k1 > 0.0);
  CHECK(k1 <= 1.0);
}

TEST_CASE("vocabulary mismatch is rejected") {
  GramModel gram = GramModel::identity(2);
  Histogram bad = make_hist({0, 5});
  Histogram good = make_hist({0});
  CHECK_THROWS_AS(expected_sq_l2(bad, good, gram), VocabMismatch);
  CHECK_THROWS_AS(expected_linear_kernel(good, bad, gram), VocabMismatch);
}

TEST_CASE("sampled translations") {
  Document doc;
  doc.id = "d";
  doc.tokens = {0, 1, 0};

  TranslationModel id2 = full_translation(Eigen::MatrixXd::Identity(2, 2));
  CHECK(sample_translation(doc, id2, 7).tokens == doc.tokens);

  // excluded words always map to themselves
  TranslationModel excl;
  excl.block = (RowMatrixXd(1, 1) << 1.0).finished();
  excl.included = {1};
  excl.block_index = {-1, 1 - 1};
  excl.excluded = {0};
  Document only_excluded;
  only_excluded.tokens = {0, 0};
  CHECK(sample_translation(only_excluded, excl, 3).tokens ==
        std::vector<WordId>{0, 0});

  // determinism and marginal frequency 0.1 +- 0.003 over 1e5 draws
  TranslationModel t2 = two_word_model();
  Document single;
  single.tokens = {0};
  CHECK(sample_translation(single, t2, 42).tokens ==
        sample_translation(single, t2, 42).tokens);
  int to_b = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s)
    if (sample_translation(single, t2, s).tokens[0] == 1) ++to_b;
  double fraction = static_cast<double>(to_b) / n;
  CHECK(std::abs(fraction - 0.1) <= 0.003);
}

TEST_CASE("monte carlo oracle") {
  TranslationModel id2 = full_translation(Eigen::MatrixXd::Identity(2, 2));
  GramModel g_id = precompute_gram(id2);
  Histogram x = make_hist({0, 0, 1});
  Histogram w = make_hist({1});
  McEstimate fixed = mc_expected_sq_l2(x, w, id2, 500, 9);
  CHECK(fixed.mean ==
        doctest::Approx(euclidean_sq(x.to_simplex(2), w.to_simplex(2))));
  // identical samples; only mean round-off remains
  CHECK(fixed.std_err <= 1e-14);
  McEstimate zero = mc_expected_sq_l2(x, x, id2, 100, 9);
  CHECK(zero.mean == 0.0);

  // closed form within three standard errors on random instances
  SplitMix64 rng(2718);
  int ok = 0;
  const int instances = 20;
  for (int i = 0; i < instances; ++i) {
    WordId vocab = 2 + static_cast<WordId>(rng.next_below(8));
    TranslationModel t = random_translation(vocab, rng);
    GramModel gram = precompute_gram(t);
    Histogram a = random_hist(vocab, 12, rng);
    Histogram b = random_hist(vocab, 12, rng);
    double closed = expected_sq_l2(a, b, gram);
    McEstimate est = mc_expected_sq_l2(a, b, t, 30000, rng.next());
    if (std::abs(closed - est.mean) <= 3.0 * est.std_err + 1e-12) ++ok;
  }
  CHECK(ok >= instances - 1);
  (void)g_id;
}

TEST_CASE("permutation invariance comes from the histogram form") {
  SplitMix64 rng(55);
  TranslationModel t = random_translation(5, rng);
  GramModel gram = precompute_gram(t);
  std::vector<WordId> tokens{0, 1, 1, 2, 4, 4, 4};
  std::vector<WordId> permuted{4, 1, 4, 0, 2, 4, 1};
  Histogram w = make_hist({2, 3});
  CHECK(expected_sq_l2(make_hist(tokens), w, gram) ==
        expected_sq_l2(make_hist(permuted), w, gram));
}

TEST_CASE("expected linear kernel matrices are positive semidefinite") {
  SplitMix64 rng(77);
  TranslationModel t = random_translation(10, rng);
  GramModel gram = precompute_gram(t);
  std::vector<Histogram> docs;
  for (int i = 0; i < 25; ++i) docs.push_back(random_hist(10, 18, rng));

  Eigen::MatrixXd k_lin = pairwise_expected_linear(docs, gram);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k_lin);
  CHECK(eig.eigenvalues()(0) >=
        -1e-8 * std::max(1.0, eig.eigenvalues().maxCoeff()));

  Eigen::MatrixXd k_rbf = pairwise_expected_rbf(docs, gram, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_rbf(k_rbf);
  CHECK(eig_rbf.eigenvalues()(0) >=
        -1e-8 * std::max(1.0, eig_rbf.eigenvalues().maxCoeff()));
}

TEST_CASE("pairwise matrices agree with the scalar functions") {
  SplitMix64 rng(78);
  TranslationModel t = random_translation(6, rng);
  GramModel gram = precompute_gram(t);
  std::vector<Histogram> docs;
  for (int i = 0; i < 8; ++i) docs.push_back(random_hist(6, 10, rng));

  Eigen::MatrixXd d = pairwise_expected_sq_l2(docs, gram);
  Eigen::MatrixXd k = pairwise_expected_linear(docs, gram);
  Eigen::MatrixXd p = pairwise_plain_sq_l2(docs, 6);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      CHECK(d(i, j) == doctest::Approx(expected_sq_l2(docs[i], docs[j], gram))
                           .epsilon(1e-12));
      CHECK(k(i, j) ==
            doctest::Approx(expected_linear_kernel(docs[i], docs[j], gram))
                .epsilon(1e-12));
      CHECK(p(i, j) == doctest::Approx(euclidean_sq(docs[i].to_simplex(6),
                                                    docs[j].to_simplex(6)))
                           .epsilon(1e-12));
      CHECK(d(i, j) == d(j, i));
    }
}
