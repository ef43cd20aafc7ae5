#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cfl/harness.hpp"

namespace cfl {

namespace {

Dataset synthetic(std::uint64_t seed, std::size_t n0, std::size_t n1, double shift) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Dataset d;
  d.classes = 2;
  d.class_names = {"neg", "pos"};
  for (std::size_t i = 0; i < n0 + n1; ++i) {
    const Label y = i < n0 ? 0 : 1;
    const std::vector<double> row{nd(gen) + shift * y, nd(gen)};
    d.features.append_row(row);
    d.labels.push_back(y);
  }
  return d;
}

ExperimentPlan small_plan(Method m) {
  ExperimentPlan p;
  p.method = m;
  p.classifier.k = 5;
  p.repetitions = 2;
  p.optimizer.restarts = 2;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (const auto m : all_methods()) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("nope"), std::invalid_argument);
  EXPECT_TRUE(method_abstains(Method::NIReject));
  EXPECT_FALSE(method_abstains(Method::GMean));
}

TEST(FoldPlan, IsLeakFree) {
  const auto d = synthetic(1, 60, 20, 1.0);
  const auto plan = small_plan(Method::NI);
  const auto fp = make_fold_plan(d, plan);
  EXPECT_EQ(fp.splits.size(), plan.folds * plan.repetitions);
  EXPECT_TRUE(find_leakage(fp, d.size()).empty());
  for (const auto& s : fp.splits) {
    EXPECT_EQ(s.inner.size(), 3u);
    std::set<std::size_t> inner_val;
    for (const auto& in : s.inner) inner_val.insert(in.validation.begin(), in.validation.end());
    EXPECT_EQ(inner_val, std::set<std::size_t>(s.train.begin(), s.train.end()));
  }
}

TEST(FoldPlan, DetectsInjectedLeak) {
  const auto d = synthetic(1, 30, 12, 1.0);
  auto fp = make_fold_plan(d, small_plan(Method::NI));
  fp.splits[0].inner[1].train.push_back(fp.splits[0].test.front());
  EXPECT_FALSE(find_leakage(fp, d.size()).empty());
}

TEST(NestedCv, ObservedAccessNeverTouchesTheTestFold) {
  const auto d = synthetic(2, 45, 15, 1.2);
  std::size_t inner_calls = 0;
  RunOptions opt;
  opt.observer = [&](const OuterSplit& s, Stage st, const std::vector<std::size_t>& idx) {
    if (st != Stage::InnerTrain && st != Stage::InnerValidation) return;
    ++inner_calls;
    const std::set<std::size_t> test(s.test.begin(), s.test.end());
    for (const auto i : idx) EXPECT_EQ(test.count(i), 0u);
  };
  nested_cv_run(d, small_plan(Method::NIReject), opt);
  EXPECT_EQ(inner_calls, 2u * 3u * 3u * 2u);
}

TEST(NestedCv, ThirtyEvaluationsAndReproducible) {
  const auto d = synthetic(3, 60, 20, 1.0);
  auto plan = small_plan(Method::NI);
  plan.repetitions = 10;
  plan.optimizer.restarts = 1;
  const auto a = nested_cv_run(d, plan);
  const auto b = nested_cv_run(d, plan);
  EXPECT_EQ(a.folds.size(), 30u);
  EXPECT_EQ(a.metric_mean, b.metric_mean);
  EXPECT_EQ(a.param_mean, b.param_mean);
  ASSERT_EQ(a.param_mean.size(), 2u);
  EXPECT_DOUBLE_EQ(a.param_mean[1], 1.0);
}

TEST(NestedCv, EveryMethodRuns) {
  const auto d = synthetic(4, 40, 14, 1.5);
  for (const auto m : all_methods()) {
    const auto r = nested_cv_run(d, small_plan(m));
    ASSERT_EQ(r.metric_mean.size(), metric_columns(2).size());
    const auto ni = r.metric_mean.back();
    ASSERT_TRUE(ni) << method_name(m);
    EXPECT_GE(*ni, 0.0);
    EXPECT_LE(*ni, 1.0);
    const bool has_rej = r.metric_mean[2 * 2 + 2].has_value();
    EXPECT_EQ(has_rej, method_abstains(m)) << method_name(m);
  }
}

TEST(NestedCv, ParzenClassifier) {
  const auto d = synthetic(5, 40, 14, 1.5);
  auto plan = small_plan(Method::NI);
  plan.classifier.kind = ClassifierSpec::Kind::Parzen;
  const auto r = nested_cv_run(d, plan);
  EXPECT_GT(*r.metric_mean.back(), 0.0);
}

TEST(NestedCv, ScalingModesBothWork) {
  const auto d = synthetic(6, 40, 14, 1.5);
  auto plan = small_plan(Method::Plain);
  const auto own = nested_cv_run(d, plan);
  plan.paper_scaling = true;
  const auto global = nested_cv_run(d, plan);
  EXPECT_EQ(own.folds.size(), global.folds.size());
}

TEST(NestedCv, AggregateIsOrderIndependent) {
  const auto d = synthetic(7, 40, 14, 1.0);
  auto r = nested_cv_run(d, small_plan(Method::Chow));
  const auto before = r.metric_mean;
  std::reverse(r.folds.begin(), r.folds.end());
  std::vector<double> sum(before.size(), 0.0);
  for (const auto& f : r.folds) {
    const auto v = flatten(f.metrics, 2);
    for (std::size_t c = 0; c < v.size(); ++c) sum[c] += v[c].value_or(0.0);
  }
  for (std::size_t c = 0; c < before.size(); ++c) {
    if (before[c]) EXPECT_NEAR(*before[c], sum[c] / static_cast<double>(r.folds.size()), 1e-12);
  }
}

TEST(NestedCv, ClassTooSmall) {
  const auto d = synthetic(8, 30, 2, 1.0);
  EXPECT_THROW(nested_cv_run(d, small_plan(Method::Plain)), std::invalid_argument);
}

TEST(FixedParams, AppliesGivenWeights) {
  const auto d = synthetic(9, 40, 14, 1.0);
  const auto r = fixed_params_run(d, small_plan(Method::Plain), {1.0, 1.0}, false);
  const auto p = nested_cv_run(d, small_plan(Method::Plain));
  EXPECT_EQ(r.metric_mean, p.metric_mean);
}

TEST(SearchSpace, CoordinateMapping) {
  const auto s = search_space(3, false);
  EXPECT_EQ(s.dimension(), 2u);
  const std::vector<double> u{0.5, 0.2};
  const auto a = to_params(u, false);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_DOUBLE_EQ(a[1], 0.25);
  EXPECT_DOUBLE_EQ(a[2], 1.0);
  const auto r = search_space(3, true);
  EXPECT_EQ(r.dimension(), 3u);
  EXPECT_LT(*r.sum_upper, 2.0);
}

TEST(Benchmark, HeaderAndRerunIdentity) {
  const auto d = synthetic(10, 40, 14, 1.2);
  const std::vector<ExperimentPlan> plans{small_plan(Method::Plain), small_plan(Method::NI)};
  const auto dir = std::filesystem::temp_directory_path() / "cfl_bench_test";
  std::filesystem::remove_all(dir);
  const auto a = run_benchmark(plans, {{"toy", d}}, (dir / "a").string());
  const auto b = run_benchmark(plans, {{"toy", d}}, (dir / "b").string());
  ASSERT_EQ(a.written.size(), 4u);
  for (std::size_t i = 0; i < a.written.size(); ++i) EXPECT_EQ(slurp(a.written[i]), slurp(b.written[i]));
  const auto csv = slurp((dir / "a" / "toy_results.csv").string());
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "method,E_1,E_2,E,A,Rej_1,Rej_2,Rej,G,F,NI");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 2u);
  std::filesystem::remove_all(dir);
}

}  // namespace cfl
