#include <doctest.h>

#include <cmath>

#include "semdist/expected.hpp"
#include "semdist/learn.hpp"
#include "semdist/rng.hpp"

using namespace semdist;

namespace {

Histogram make_hist(std::vector<WordId> tokens) {
  return histogram(std::span<const WordId>(tokens));
}

}  // namespace

TEST_CASE("knn majority vote and tie rules") {
  std::vector<std::string> labels{"a", "a", "b", "b", "b"};
  std::vector<double> d1{0.0, 5, 5, 5, 5};
  CHECK(knn_classify(d1, labels, 1) == "a");

  // vote tie at k=2: summed distance decides
  std::vector<double> d2{1.0, 5, 2.0, 5, 5};
  CHECK(knn_classify(d2, labels, 2) == "a");
  std::vector<double> d3{2.0, 5, 1.0, 5, 5};
  CHECK(knn_classify(d3, labels, 2) == "b");

  // equal distance and equal sum: lexicographically smallest label
  std::vector<double> d4{1.0, 5, 1.0, 5, 5};
  CHECK(knn_classify(d4, labels, 2) == "a");

  // distance ties keep the training order: first two of three zeros are "a"
  std::vector<double> d5{0.0, 0.0, 0.0, 5, 5};
  CHECK(knn_classify(d5, labels, 3) == "a");

  CHECK(knn_classify(d1, labels, 5) == "b");
  CHECK_THROWS_AS(knn_classify(std::vector<double>{}, std::vector<std::string>{}, 1),
                  EmptyTrainingSet);
  CHECK_THROWS_AS(knn_classify(d1, labels, 6), UsageError);
}

TEST_CASE("knn over histograms with a metric callback") {
  std::vector<Histogram> train{make_hist({0, 0}), make_hist({1, 1})};
  std::vector<std::string> labels{"x", "y"};
  GramModel gram = GramModel::identity(2);
  auto metric = [&](const Histogram& a, const Histogram& b) {
    return expected_sq_l2(a, b, gram);
  };
  CHECK(knn_classify(train, labels, make_hist({0, 0}), 1, metric) == "x");
  CHECK(knn_classify(train, labels, make_hist({1}), 1, metric) == "y");
}

TEST_CASE("identity-translation knn matches plain euclidean prediction for prediction") {
  SplitMix64 rng(11);
  GramModel gram = GramModel::identity(5);
  std::vector<Histogram> train;
  std::vector<std::string> labels;
  for (int i = 0; i < 20; ++i) {
    std::vector<WordId> t;
    for (int j = 0; j < 8; ++j) t.push_back(static_cast<WordId>(rng.next_below(5)));
    train.push_back(make_hist(t));
    labels.push_back(i % 2 ? "odd" : "even");
  }
  auto expected_metric = [&](const Histogram& a, const Histogram& b) {
    return expected_sq_l2(a, b, gram);
  };
  auto plain_metric = [&](const Histogram& a, const Histogram& b) {
    return euclidean_sq(a.to_simplex(5), b.to_simplex(5));
  };
  for (int i = 0; i < 40; ++i) {
    std::vector<WordId> t;
    for (int j = 0; j < 6; ++j) t.push_back(static_cast<WordId>(rng.next_below(5)));
    Histogram query = make_hist(t);
    CHECK(knn_classify(train, labels, query, 3, expected_metric) ==
          knn_classify(train, labels, query, 3, plain_metric));
  }
}

TEST_CASE("kernel pca on two points") {
  Eigen::MatrixXd k(2, 2);
  k << 1, 0, 0, 1;  // linear kernel of (1,0) and (0,1)
  KpcaModel model = kpca_fit(k, 2);
  CHECK(model.k == 1);  // centering leaves one positive direction
  CHECK(model.rank_deficient());
  CHECK(std::abs(model.train_coords(0, 0)) == doctest::Approx(0.7071).epsilon(1e-4));
  CHECK(model.train_coords(0, 0) == doctest::Approx(-model.train_coords(1, 0)));
  double dist = std::pow(model.train_coords(0, 0) - model.train_coords(1, 0), 2);
  CHECK(dist == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("identity kernel spreads variance evenly") {
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(5, 5);
  KpcaModel model = kpca_fit(k, 4);
  REQUIRE(model.positive_spectrum.size() == 4);
  CHECK(variance_fraction(model, 1) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(variance_fraction(model, 4) == doctest::Approx(1.0).epsilon(1e-12));
  double previous = 0;
  for (int kk = 1; kk <= 4; ++kk) {
    double f = variance_fraction(model, kk);
    CHECK(f >= previous);
    previous = f;
  }
}

namespace {

Eigen::MatrixXd random_psd_kernel(int n, int feat, SplitMix64& rng) {
  Eigen::MatrixXd x(n, feat);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < feat; ++j) x(i, j) = rng.next_double() - 0.5;
  return x * x.transpose();
}

}  // namespace

TEST_CASE("full-rank kernel pca is an isometry of the centered kernel") {
  SplitMix64 rng(404);
  Eigen::MatrixXd k = random_psd_kernel(12, 12, rng);
  KpcaModel model = kpca_fit(k, 12);

  Eigen::VectorXd row_means = k.rowwise().mean();
  double grand = k.mean();
  auto centered = [&](int i, int j) {
    return k(i, j) - row_means(i) - row_means(j) + grand;
  };
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      double kernel_dist = centered(i, i) + centered(j, j) - 2 * centered(i, j);
      double coord_dist =
          (model.train_coords.row(i) - model.train_coords.row(j)).squaredNorm();
      CHECK(coord_dist == doctest::Approx(kernel_dist).epsilon(1e-6));
      // pairwise centered kernel values are inner products of coordinates
      CHECK(model.train_coords.row(i).dot(model.train_coords.row(j)) ==
            doctest::Approx(centered(i, j)).epsilon(1e-6));
    }
}

TEST_CASE("projection reproduces training coordinates and residuals vanish") {
  SplitMix64 rng(405);
  Eigen::MatrixXd k = random_psd_kernel(10, 10, rng);
  KpcaModel model = kpca_fit(k, 10);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd coords = kpca_project(model, k.col(i));
    CHECK((coords - model.train_coords.row(i).transpose()).cwiseAbs().maxCoeff() <=
          1e-8);
    CHECK(test_residual(model, k.col(i), k(i, i)) <= 1e-8);
  }

  // residuals are nonincreasing in the dimension
  Eigen::MatrixXd k_train = k.topLeftCorner(8, 8);
  KpcaModel partial = kpca_fit(k_train, 8);
  Eigen::VectorXd k_row = k.col(9).head(8);
  double self = k(9, 9);
  double previous = test_residual(model, k.col(9), self, 0);
  CHECK(previous ==
        doctest::Approx(self - 2 * k.col(9).mean() + model.grand_mean));
  for (int kk = 1; kk <= partial.k; ++kk) {
    double r = test_residual(partial, k_row, self, kk);
    CHECK(r >= 0.0);
    CHECK(r <= test_residual(partial, k_row, self, kk - 1) + 1e-12);
  }

  // zero-dimensional model yields empty coordinates
  KpcaModel none = kpca_fit(k_train, 0);
  CHECK(none.k == 0);
  CHECK(kpca_project(none, k_row).size() == 0);
}

TEST_CASE("rank-deficient fits truncate and report") {
  Eigen::MatrixXd k = Eigen::MatrixXd::Ones(4, 4);  // rank one, centered rank zero
  KpcaModel model = kpca_fit(k, 3);
  CHECK(model.k == 0);
  CHECK(model.rank_deficient());
  CHECK_THROWS_AS(kpca_fit(Eigen::MatrixXd::Ones(3, 2), 1), DimensionMismatch);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(kpca_fit(asym, 1), DataError);
}

TEST_CASE("linear discriminant separates and respects the ridge") {
  Eigen::MatrixXd x(4, 1);
  x << -1.0, -1.1, 1.0, 1.1;
  std::vector<std::string> labels{"neg", "neg", "pos", "pos"};
  LdaModel lda = lda_fit(x, labels, -1);
  CHECK(lda_predict(lda, Eigen::VectorXd::Constant(1, 0.9)) == "pos");
  CHECK(lda_predict(lda, Eigen::VectorXd::Constant(1, -0.4)) == "neg");

  // large ridge degenerates to the nearest class mean
  LdaModel ridged = lda_fit(x, labels, 1e9);
  CHECK(lda_predict(ridged, Eigen::VectorXd::Constant(1, 0.2)) == "pos");
  CHECK(lda_predict(ridged, Eigen::VectorXd::Constant(1, -0.2)) == "neg");

  // relabeling permutes predictions identically
  std::vector<std::string> swapped{"pos", "pos", "neg", "neg"};
  LdaModel perm = lda_fit(x, swapped, -1);
  CHECK(lda_predict(perm, Eigen::VectorXd::Constant(1, 0.9)) == "neg");

  std::vector<std::string> lonely{"a", "b", "b", "b"};
  CHECK_THROWS_AS(lda_fit(x, lonely, -1), DegenerateClass);
}

TEST_CASE("lda prediction is affine invariant with zero ridge") {
  SplitMix64 rng(606);
  const int n = 30;
  Eigen::MatrixXd x(n, 2);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    double cls = i < n / 2 ? 0.0 : 2.5;
    x(i, 0) = cls + rng.next_double();
    x(i, 1) = -cls + rng.next_double();
    labels.push_back(i < n / 2 ? "lo" : "hi");
  }
  Eigen::MatrixXd map(2, 2);
  map << 1.3, 0.4, -0.2, 0.9;  // invertible
  Eigen::RowVector2d offset(0.7, -1.1);
  Eigen::MatrixXd x_mapped = (x * map.transpose()).rowwise() + offset;

  LdaModel base = lda_fit(x, labels, 0.0);
  LdaModel mapped = lda_fit(x_mapped, labels, 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector2d p(rng.next_double() * 4 - 1, rng.next_double() * 4 - 2);
    Eigen::Vector2d q = map * p + offset.transpose();
    CHECK(lda_predict(base, p) == lda_predict(mapped, q));
  }
}
