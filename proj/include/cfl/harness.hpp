#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/baselines.hpp"
#include "cfl/classifiers.hpp"
#include "cfl/dataset.hpp"
#include "cfl/metrics.hpp"
#include "cfl/optimizer.hpp"
#include "cfl/roc.hpp"

namespace cfl {

enum class Method { Plain, Smote, CostSensitive, Chow, GMean, GMeanReject, NI, NIReject };

std::string_view method_name(Method m);
// Accepts the CLI spellings: plain, smote, costsens, chow, gmean, gmean-rej, ni, ni-rej.
Method parse_method(std::string_view name);
std::vector<Method> all_methods();
bool method_abstains(Method m);
bool method_optimizes(Method m);

struct ClassifierSpec {
  enum class Kind { Knn, Parzen };
  Kind kind = Kind::Knn;
  std::size_t k = 11;
  std::size_t parzen_r = 10;
};

ClassifierSpec::Kind parse_classifier(std::string_view name);
ProbTable fit_predict(const ClassifierSpec& spec, const Dataset& train, const Matrix& query);

struct ExperimentPlan {
  Method method = Method::NI;
  ClassifierSpec classifier;
  std::size_t folds = 3;
  std::size_t inner_folds = 3;
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
  PowellConfig optimizer;
  SmoteConfig smote;
  double chow_threshold = 0.3;
  // Rescale with statistics from the whole data set instead of each training partition.
  bool paper_scaling = false;

  void validate() const;
};

// Index sets of one nested cross-validation. Indices refer to the data set rows.
struct InnerSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

struct OuterSplit {
  std::size_t repetition = 0;
  std::size_t fold = 0;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::vector<InnerSplit> inner;
};

struct FoldPlan {
  std::vector<OuterSplit> splits;
};

FoldPlan make_fold_plan(const Dataset& data, const ExperimentPlan& plan);

// Empty when the plan is sound; otherwise one message per violation (a test
// index inside an inner split, overlapping outer partitions, ...).
std::vector<std::string> find_leakage(const FoldPlan& plan, std::size_t n);

enum class Stage { InnerTrain, InnerValidation, OuterTrain, OuterTest };

// Called for every index set handed to a classifier or an objective.
using AccessObserver = std::function<void(const OuterSplit&, Stage, const std::vector<std::size_t>&)>;

struct FoldRecord {
  std::size_t repetition = 0;
  std::size_t fold = 0;
  MetricReport metrics;
  // Weights (alpha, last entry 1) or rejection thresholds applied to the test fold.
  std::vector<double> params;
};

// Positive-class scores of one inner validation set (binary only).
struct ScoredSet {
  std::vector<double> positive_scores;
  std::vector<double> negative_scores;
};

struct CvResult {
  Method method = Method::Plain;
  std::size_t classes = 0;
  std::vector<FoldRecord> folds;
  std::vector<std::optional<double>> metric_mean;  // ordered as metric_columns()
  std::vector<std::optional<double>> metric_sd;
  std::vector<double> param_mean;
  std::vector<double> param_sd;
  std::vector<ScoredSet> validation_scores;
};

struct RunOptions {
  AccessObserver observer;
  bool keep_validation_scores = false;
};

// Table column order: E_1..E_m, E, A, Rej_1..Rej_m, Rej, G, F, NI.
std::vector<std::string> metric_columns(std::size_t classes);
std::vector<std::optional<double>> flatten(const MetricReport& r, std::size_t classes);

// Outer folds x repetitions; each outer training set is split again and the
// mean of the per-inner-fold optima is applied to the outer test fold.
CvResult nested_cv_run(const Dataset& data, const ExperimentPlan& plan, const RunOptions& options = {});

// Evaluates fixed parameters (weights or thresholds) over the outer folds.
CvResult fixed_params_run(const Dataset& data, const ExperimentPlan& plan, const std::vector<double>& params,
                          bool abstaining);

// Search coordinates <-> decision parameters. Weights use u = alpha / (1 + alpha)
// for the first m - 1 classes; thresholds are searched directly.
ParameterSpace search_space(std::size_t classes, bool abstaining);
std::vector<double> to_params(std::span<const double> coords, bool abstaining);

struct NamedDataset {
  std::string name;
  Dataset data;
};

struct BenchmarkFiles {
  std::vector<std::string> written;
};

// Per data set: <name>_results.csv (means), <name>_sd.csv, <name>_params.csv,
// plus summary.md over every data set.
BenchmarkFiles run_benchmark(const std::vector<ExperimentPlan>& plans, const std::vector<NamedDataset>& datasets,
                             const std::string& out_dir);

std::string format_value(const std::optional<double>& v);
std::string results_csv(const std::vector<CvResult>& results, bool sd);
std::string params_csv(const std::vector<CvResult>& results);

}  // namespace cfl
