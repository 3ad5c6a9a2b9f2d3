#include "semdist/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "semdist/rng.hpp"

namespace semdist {

LabeledDocs map_labeled_corpus(std::span<const RawDoc> docs,
                               const Vocabulary& vocab,
                               const TokenizeOptions& opt) {
  LabeledDocs out;
  for (const RawDoc& raw : docs) {
    if (!raw.label) {
      ++out.dropped_docs;
      continue;
    }
    try {
      MappedDoc mapped = map_to_vocabulary(raw.text, vocab, opt);
      out.skipped_tokens += mapped.skipped;
      out.hists.push_back(std::move(mapped.hist));
      out.labels.push_back(*raw.label);
      out.ids.push_back(raw.id);
    } catch (const EmptyDocument&) {
      ++out.dropped_docs;
    }
  }
  return out;
}

namespace {

std::vector<std::string> distinct_labels(std::span<const std::string> labels) {
  std::set<std::string> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

double mean_of(std::span<const double> v) {
  double m = 0;
  for (double x : v) m += x;
  return v.empty() ? 0.0 : m / static_cast<double>(v.size());
}

double sd_of(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<KnnEvalRow> run_knn_eval(const LabeledDocs& docs,
                                     const GramModel& gram,
                                     const KnnEvalOptions& opt) {
  const std::vector<std::string> tasks = distinct_labels(docs.labels);
  if (tasks.size() < 2)
    throw InsufficientClassData("need at least two labels for evaluation");

  const Eigen::MatrixXd d_expected =
      pairwise_expected_sq_l2(docs.hists, gram, opt.exec);
  // The baseline goes through the identity Gram model so that a fitted T = I
  // reproduces it distance for distance, ties included.
  const Eigen::MatrixXd d_plain = pairwise_expected_sq_l2(
      docs.hists, GramModel::identity(gram.vocab_size()), opt.exec);

  std::vector<KnnEvalRow> rows;
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const std::string& task = tasks[ti];
    std::vector<std::int32_t> pos, neg;
    for (std::size_t i = 0; i < docs.labels.size(); ++i)
      (docs.labels[i] == task ? pos : neg).push_back(static_cast<std::int32_t>(i));

    for (std::size_t si = 0; si < opt.train_sizes.size(); ++si) {
      const int n_train = opt.train_sizes[si];
      if (static_cast<int>(pos.size()) < n_train + opt.test_per_class ||
          static_cast<int>(neg.size()) < n_train + opt.test_per_class)
        throw InsufficientClassData("task " + task +
                                    ": not enough documents for train size " +
                                    std::to_string(n_train));

      std::vector<double> err_plain, err_expected;
      for (int r = 0; r < opt.realizations; ++r) {
        SplitMix64 rng(mix_seed(opt.seed,
                                (ti * 1000003ull) + (si * 10007ull) + r));
        std::vector<std::int32_t> p = pos, q = neg;
        shuffle(p, rng);
        shuffle(q, rng);

        std::vector<std::int32_t> train(p.begin(), p.begin() + n_train);
        train.insert(train.end(), q.begin(), q.begin() + n_train);
        std::vector<std::string> train_labels;
        train_labels.reserve(train.size());
        for (std::int32_t i : train)
          train_labels.push_back(docs.labels[i] == task ? "pos" : "neg");

        std::vector<std::int32_t> test(p.begin() + n_train,
                                       p.begin() + n_train + opt.test_per_class);
        test.insert(test.end(), q.begin() + n_train,
                    q.begin() + n_train + opt.test_per_class);

        auto error_with = [&](const Eigen::MatrixXd& dist) {
          int wrong = 0;
          std::vector<double> row(train.size());
          for (std::int32_t t : test) {
            for (std::size_t j = 0; j < train.size(); ++j)
              row[j] = dist(t, train[j]);
            std::string got = knn_classify(row, train_labels, opt.k);
            std::string want = docs.labels[t] == task ? "pos" : "neg";
            if (got != want) ++wrong;
          }
          return static_cast<double>(wrong) / static_cast<double>(test.size());
        };
        err_plain.push_back(error_with(d_plain));
        err_expected.push_back(error_with(d_expected));
      }

      for (const auto& [metric, errs] :
           {std::pair<std::string, std::vector<double>*>{"l2", &err_plain},
            {"expected-l2", &err_expected}}) {
        KnnEvalRow row;
        row.task = task;
        row.train_size = n_train;
        row.metric = metric;
        row.mean_error = mean_of(*errs);
        row.sd = sd_of(*errs, row.mean_error);
        row.realizations = opt.realizations;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

// Stratified split: per class, the first 70% (rounded down, at least 2) of a
// seeded shuffle goes to train, the rest to test.
void stratified_split(std::span<const std::string> labels, double train_fraction,
                      SplitMix64& rng, std::vector<std::int32_t>& train,
                      std::vector<std::int32_t>& test) {
  std::map<std::string, std::vector<std::int32_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i]].push_back(static_cast<std::int32_t>(i));
  train.clear();
  test.clear();
  for (auto& [label, idx] : by_class) {
    if (idx.size() < 3)
      throw InsufficientClassData("class too small for a 70/30 split: " + label);
    shuffle(idx, rng);
    std::size_t n_train = std::max<std::size_t>(
        2, static_cast<std::size_t>(train_fraction * static_cast<double>(idx.size())));
    if (n_train >= idx.size()) n_train = idx.size() - 1;
    train.insert(train.end(), idx.begin(), idx.begin() + n_train);
    test.insert(test.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
}

}  // namespace

std::vector<KpcaEvalRow> run_kpca_eval_on_kernels(
    const std::vector<std::pair<std::string, Eigen::MatrixXd>>& kernels,
    std::span<const std::string> labels, const KpcaEvalOptions& opt) {
  if (distinct_labels(labels).size() < 2)
    throw InsufficientClassData("need at least two labels for evaluation");
  const int kmax = *std::max_element(opt.dims.begin(), opt.dims.end());

  struct Accum {
    std::vector<double> error, varfrac, residual;
  };
  std::map<std::pair<std::string, int>, Accum> accum;

  for (int r = 0; r < opt.realizations; ++r) {
    // The split depends only on (seed, r): every kernel sees the same split.
    SplitMix64 rng(mix_seed(opt.seed, 0xe5a1000ull + r));
    std::vector<std::int32_t> train, test;
    stratified_split(labels, opt.train_fraction, rng, train, test);

    std::vector<std::string> train_labels;
    train_labels.reserve(train.size());
    for (std::int32_t i : train) train_labels.push_back(labels[i]);

    for (const auto& [name, K] : kernels) {
      Eigen::MatrixXd k_train(train.size(), train.size());
      for (std::size_t a = 0; a < train.size(); ++a)
        for (std::size_t b = 0; b < train.size(); ++b)
          k_train(a, b) = K(train[a], train[b]);

      KpcaModel model = kpca_fit(k_train, kmax);

      // Project every test document once at the full retained dimension.
      Eigen::MatrixXd test_coords(test.size(), model.k);
      Eigen::VectorXd centered_self(test.size());
      for (std::size_t a = 0; a < test.size(); ++a) {
        Eigen::VectorXd k_row(train.size());
        for (std::size_t b = 0; b < train.size(); ++b)
          k_row(b) = K(test[a], train[b]);
        test_coords.row(a) = kpca_project(model, k_row).transpose();
        centered_self(a) =
            K(test[a], test[a]) - 2.0 * k_row.mean() + model.grand_mean;
      }

      for (int dim : opt.dims) {
        const int k_eff = std::min(dim, model.k);
        LdaModel lda =
            lda_fit(model.train_coords.leftCols(k_eff), train_labels, -1);

        int wrong = 0;
        double residual_sum = 0;
        for (std::size_t a = 0; a < test.size(); ++a) {
          Eigen::VectorXd coords = test_coords.row(a).head(k_eff).transpose();
          if (lda_predict(lda, coords) != labels[test[a]]) ++wrong;
          double res = centered_self(a) - coords.squaredNorm();
          residual_sum += std::max(res, 0.0);
        }
        Accum& acc = accum[{name, dim}];
        acc.error.push_back(static_cast<double>(wrong) /
                            static_cast<double>(test.size()));
        acc.varfrac.push_back(variance_fraction(model, k_eff));
        acc.residual.push_back(residual_sum / static_cast<double>(test.size()));
      }
    }
  }

  std::vector<KpcaEvalRow> rows;
  for (const auto& [name, K] : kernels) {
    for (int dim : opt.dims) {
      const Accum& acc = accum.at({name, dim});
      KpcaEvalRow row;
      row.task = opt.task_name;
      row.kernel = name;
      row.k = dim;
      row.lda_error = mean_of(acc.error);
      row.variance_fraction = mean_of(acc.varfrac);
      row.test_residual = mean_of(acc.residual);
      row.realizations = opt.realizations;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<KpcaEvalRow> run_kpca_eval(const LabeledDocs& docs,
                                       const GramModel& gram,
                                       const KpcaEvalOptions& opt) {
  GramModel plain = GramModel::identity(gram.vocab_size());
  std::vector<std::pair<std::string, Eigen::MatrixXd>> kernels;
  kernels.emplace_back("expected-linear",
                       pairwise_expected_linear(docs.hists, gram, opt.exec));
  kernels.emplace_back("linear",
                       pairwise_expected_linear(docs.hists, plain, opt.exec));
  kernels.emplace_back("expected-rbf",
                       pairwise_expected_rbf(docs.hists, gram, opt.kernel_sigma,
                                             opt.exec));
  kernels.emplace_back("rbf", pairwise_expected_rbf(docs.hists, plain,
                                                    opt.kernel_sigma, opt.exec));
  return run_kpca_eval_on_kernels(kernels, docs.labels, opt);
}

void write_knn_csv(const std::string& path, std::span<const KnnEvalRow> rows,
                   std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write: " + path);
  out << "# seed=" << seed << "\n";
  out << "task,train_size,metric,mean_error,sd,realizations\n";
  char buf[64];
  for (const KnnEvalRow& r : rows) {
    out << r.task << ',' << r.train_size << ',' << r.metric << ',';
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", r.mean_error, r.sd);
    out << buf << ',' << r.realizations << "\n";
  }
}

void write_kpca_csv(const std::string& path, std::span<const KpcaEvalRow> rows,
                    std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write: " + path);
  out << "# seed=" << seed << "\n";
  out << "task,kernel,k,lda_error,variance_fraction,test_residual,realizations\n";
  char buf[96];
  for (const KpcaEvalRow& r : rows) {
    out << r.task << ',' << r.kernel << ',' << r.k << ',';
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", r.lda_error,
                  r.variance_fraction, r.test_residual);
    out << buf << ',' << r.realizations << "\n";
  }
}

double sign_test_p(int wins, int losses) {
  const int n = wins + losses;
  if (n == 0) return 1.0;
  // P(X >= wins) for X ~ Binomial(n, 1/2), exact summation.
  double coeff = 1.0;  // C(n, 0)
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (i >= wins) sum += coeff;
    coeff = coeff * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return sum * std::pow(0.5, n);
}

}  // namespace semdist
