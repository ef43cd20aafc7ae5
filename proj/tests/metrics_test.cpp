#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cfl/metrics.hpp"
#include "oracles.hpp"

namespace cfl {

namespace {

ConfusionMatrix cm_of(const oracle::Counts& c) {
  std::vector<std::vector<ConfusionMatrix::Count>> rows;
  for (const auto& r : c) rows.emplace_back(r.begin(), r.end());
  return ConfusionMatrix::from_counts(rows);
}

}  // namespace

TEST(BuildConfusion, PerfectClassification) {
  const std::vector<Label> t{0, 0, 1, 1};
  EXPECT_EQ(build_confusion(t, t, 2), ConfusionMatrix::from_counts({{2, 0, 0}, {0, 2, 0}}));
}

TEST(BuildConfusion, AllRejected) {
  const std::vector<Label> t{0, 1}, y{2, 2};
  EXPECT_EQ(build_confusion(t, y, 2), ConfusionMatrix::from_counts({{0, 0, 1}, {0, 0, 1}}));
}

TEST(BuildConfusion, HandTabulation) {
  const std::vector<Label> t{0, 0, 0, 1, 1}, y{0, 1, 2, 1, 0};
  const auto cm = build_confusion(t, y, 2);
  EXPECT_EQ(cm, ConfusionMatrix::from_counts({{1, 1, 1}, {1, 1, 0}}));
  EXPECT_EQ(cm.total(), 5);
  EXPECT_EQ(cm.rejected(), 1);
}

TEST(BuildConfusion, RejectsBadInput) {
  const std::vector<Label> t{0, 1}, short_y{0};
  EXPECT_THROW(build_confusion(t, short_y, 2), std::invalid_argument);
  const std::vector<Label> bad_y{0, 3};
  EXPECT_THROW(build_confusion(t, bad_y, 2), std::invalid_argument);
  const std::vector<Label> bad_t{2, 0}, y{0, 0};
  EXPECT_THROW(build_confusion(bad_t, y, 2), std::invalid_argument);
  EXPECT_THROW(build_confusion({}, {}, 2), std::invalid_argument);
}

TEST(ConfusionMatrix, CsvRoundTrip) {
  const auto cm = ConfusionMatrix::from_counts({{3, 1, 2}, {0, 4, 5}});
  EXPECT_EQ(cm.to_csv(), "3,1,2\n0,4,5\n");
  EXPECT_EQ(ConfusionMatrix::from_csv(cm.to_csv()), cm);
}

TEST(Ni, DiagonalIsOne) {
  EXPECT_DOUBLE_EQ(normalized_mutual_information(ConfusionMatrix::from_counts({{50, 0, 0}, {0, 50, 0}})), 1.0);
}

TEST(Ni, SingleColumnIsZero) {
  EXPECT_DOUBLE_EQ(normalized_mutual_information(ConfusionMatrix::from_counts({{100, 0, 0}, {50, 0, 0}})), 0.0);
}

TEST(Ni, MatchesOracleOnSymmetricErrors) {
  const oracle::Counts c{{90, 10, 0}, {10, 90, 0}};
  // 1 - H(0.1) in bits.
  const double expected = 1.0 + 0.9 * std::log2(0.9) + 0.1 * std::log2(0.1);
  EXPECT_NEAR(oracle::ni(c), expected, 1e-12);
  EXPECT_NEAR(normalized_mutual_information(cm_of(c)), expected, 1e-12);
  EXPECT_NEAR(expected, 0.531, 1e-3);
}

TEST(Ni, SingleClassTargetIsUndefined) {
  EXPECT_THROW(normalized_mutual_information(ConfusionMatrix::from_counts({{5, 5, 0}, {0, 0, 0}})),
               UndefinedMetricError);
}

TEST(Ni, RejectColumnEntersMarginalsOnly) {
  // Rejecting half of each class keeps the accepted part perfect, so
  // I = H(T) * 1/2 for balanced classes.
  const auto cm = ConfusionMatrix::from_counts({{5, 0, 5}, {0, 5, 5}});
  EXPECT_NEAR(normalized_mutual_information(cm), 0.5, 1e-12);
}

TEST(Ni, OracleEquivalenceOnRandomMatrices) {
  std::mt19937_64 gen(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 3);
    const auto c = oracle::random_counts(gen, m, 20);
    EXPECT_NEAR(normalized_mutual_information(cm_of(c)), oracle::ni(c), 1e-10) << "trial " << trial;
  }
}

TEST(Ni, PermutationCovariance) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 3);
    const auto c = oracle::random_counts(gen, m, 15);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    oracle::Counts p(m, std::vector<long long>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) p[perm[i]][perm[j]] = c[i][j];
      p[perm[i]][m] = c[i][m];
    }
    EXPECT_NEAR(normalized_mutual_information(cm_of(p)), normalized_mutual_information(cm_of(c)), 1e-12);
  }
}

TEST(Ni, ZeroForProductStructure) {
  // Rows proportional to one another: empirical independence.
  EXPECT_NEAR(normalized_mutual_information(ConfusionMatrix::from_counts({{2, 4, 6, 0}, {1, 2, 3, 0}, {3, 6, 9, 0}})),
              0.0, 1e-12);
  // Rejections proportional to the row totals keep the product form.
  EXPECT_NEAR(normalized_mutual_information(ConfusionMatrix::from_counts({{2, 4, 6, 2}, {1, 2, 3, 1}, {3, 6, 9, 3}})),
              0.0, 1e-12);
  // A non-product table is strictly informative.
  EXPECT_GT(normalized_mutual_information(ConfusionMatrix::from_counts({{2, 4, 6, 0}, {1, 2, 4, 0}, {3, 6, 9, 0}})),
            1e-6);
}

TEST(Ni, DiagonalMatricesGiveOne) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> d(1, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 3);
    std::vector<std::vector<ConfusionMatrix::Count>> rows(m, std::vector<ConfusionMatrix::Count>(m + 1, 0));
    for (std::size_t i = 0; i < m; ++i) rows[i][i] = d(gen);
    EXPECT_NEAR(normalized_mutual_information(ConfusionMatrix::from_counts(rows)), 1.0, 1e-12);
  }
}

TEST(Ni, ScaleInvariance) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cm = cm_of(oracle::random_counts(gen, 2 + static_cast<std::size_t>(trial % 3), 12));
    const auto big = cm.scaled(7);
    EXPECT_NEAR(normalized_mutual_information(big), normalized_mutual_information(cm), 1e-12);
    const auto a = report(cm, true), b = report(big, true);
    EXPECT_NEAR(a.gmean, b.gmean, 1e-12);
    EXPECT_NEAR(a.error, b.error, 1e-12);
    EXPECT_NEAR(a.reject, b.reject, 1e-12);
    EXPECT_NEAR(a.accuracy, b.accuracy, 1e-12);
    if (a.fmeasure) EXPECT_NEAR(*a.fmeasure, *b.fmeasure, 1e-12);
  }
}

TEST(Report, Perfect) {
  const auto r = report(ConfusionMatrix::from_counts({{2, 0, 0}, {0, 2, 0}}), false);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.error, 0.0);
  EXPECT_DOUBLE_EQ(r.gmean, 1.0);
  ASSERT_TRUE(r.fmeasure);
  EXPECT_DOUBLE_EQ(*r.fmeasure, 1.0);
}

TEST(Report, AbstainingPerClassRates) {
  const auto r = report(ConfusionMatrix::from_counts({{1, 1, 1}, {1, 1, 0}}), true);
  EXPECT_NEAR(r.class_error[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.class_reject[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.class_accuracy[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.class_error[1], 0.5, 1e-15);
  EXPECT_NEAR(r.class_reject[1], 0.0, 1e-15);
  EXPECT_NEAR(r.class_accuracy[1], 0.5, 1e-15);
  EXPECT_NEAR(r.error, 0.4, 1e-15);
  EXPECT_NEAR(r.reject, 0.2, 1e-15);
  // Accuracy over accepted instances: 2 correct of 4.
  EXPECT_NEAR(r.accuracy, 0.5, 1e-15);
}

TEST(Report, DegenerateColumn) {
  const auto r = report(ConfusionMatrix::from_counts({{100, 0, 0}, {50, 0, 0}}), false);
  EXPECT_DOUBLE_EQ(r.class_accuracy[1], 0.0);
  EXPECT_DOUBLE_EQ(r.gmean, 0.0);
  ASSERT_TRUE(r.fmeasure);
  EXPECT_DOUBLE_EQ(*r.fmeasure, 0.0);
}

TEST(Report, FmeasureAbsentForMulticlass) {
  const auto r = report(ConfusionMatrix::from_counts({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}), false);
  EXPECT_FALSE(r.fmeasure);
}

TEST(Report, FmeasureHandValue) {
  // TP = 6, FP = 2, C_P = 10 (two rejected): precision 0.75, recall 0.6.
  const auto r = report(ConfusionMatrix::from_counts({{8, 2, 0}, {2, 6, 2}}), true);
  ASSERT_TRUE(r.fmeasure);
  EXPECT_NEAR(*r.fmeasure, 2 * 0.75 * 0.6 / 1.35, 1e-12);
}

TEST(Report, NonAbstainingRejectsRefused) {
  EXPECT_THROW(report(ConfusionMatrix::from_counts({{1, 0, 1}, {0, 1, 0}}), false), std::invalid_argument);
}

TEST(Report, RateIdentitiesHold) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cm = cm_of(oracle::random_counts(gen, 2 + static_cast<std::size_t>(trial % 3), 10));
    const auto r = report(cm, true);
    for (std::size_t i = 0; i < cm.classes(); ++i) {
      EXPECT_NEAR(r.class_accuracy[i] + r.class_error[i] + r.class_reject[i], 1.0, 1e-12);
    }
    const double n = static_cast<double>(cm.total());
    const double correct = [&] {
      double s = 0;
      for (std::size_t i = 0; i < cm.classes(); ++i) s += static_cast<double>(cm.count(i, i));
      return s;
    }();
    EXPECT_NEAR(correct / n + r.error + r.reject, 1.0, 1e-12);
    EXPECT_GE(r.ni, 0.0);
    EXPECT_LE(r.ni, 1.0);
  }
}

TEST(Report, NonAbstainingAccuracyPlusErrorIsOne) {
  const auto r = report(ConfusionMatrix::from_counts({{7, 3, 0}, {2, 8, 0}}), false);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(r.class_accuracy[i] + r.class_error[i], 1.0, 1e-12);
  EXPECT_NEAR(r.accuracy + r.error, 1.0, 1e-12);
}

}  // namespace cfl
