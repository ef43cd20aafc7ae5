#include "cfl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cfl/decision.hpp"
#include "cfl/rng.hpp"

namespace cfl {

namespace {

constexpr double kEdge = 1e-6;

struct MethodInfo {
  Method method;
  std::string_view name;
  bool abstains;
  bool optimizes;
};

constexpr MethodInfo kMethods[] = {
    {Method::Plain, "plain", false, false},      {Method::Smote, "smote", false, false},
    {Method::CostSensitive, "costsens", false, false}, {Method::Chow, "chow", true, false},
    {Method::GMean, "gmean", false, true},       {Method::GMeanReject, "gmean-rej", true, true},
    {Method::NI, "ni", false, true},             {Method::NIReject, "ni-rej", true, true},
};

const MethodInfo& info(Method m) {
  for (const auto& i : kMethods) {
    if (i.method == m) return i;
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace

std::string_view method_name(Method m) { return info(m).name; }
bool method_abstains(Method m) { return info(m).abstains; }
bool method_optimizes(Method m) { return info(m).optimizes; }

Method parse_method(std::string_view name) {
  for (const auto& i : kMethods) {
    if (i.name == name) return i.method;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::vector<Method> all_methods() {
  std::vector<Method> out;
  for (const auto& i : kMethods) out.push_back(i.method);
  return out;
}

ClassifierSpec::Kind parse_classifier(std::string_view name) {
  if (name == "knn") return ClassifierSpec::Kind::Knn;
  if (name == "parzen") return ClassifierSpec::Kind::Parzen;
  throw std::invalid_argument("unknown classifier '" + std::string(name) + "'");
}

ProbTable fit_predict(const ClassifierSpec& spec, const Dataset& train, const Matrix& query) {
  if (spec.kind == ClassifierSpec::Kind::Knn) return knn_predict_proba(knn_fit(train, spec.k), query);
  return parzen_predict_proba(parzen_fit(train, spec.parzen_r), query);
}

void ExperimentPlan::validate() const {
  if (folds < 2 || inner_folds < 2) throw std::invalid_argument("ExperimentPlan: folds must be at least 2");
  if (repetitions < 1) throw std::invalid_argument("ExperimentPlan: repetitions must be at least 1");
  if (optimizer.restarts < 1) throw std::invalid_argument("ExperimentPlan: restarts must be at least 1");
  if (smote.amounts.empty()) throw std::invalid_argument("ExperimentPlan: SMOTE needs at least one amount");
}

FoldPlan make_fold_plan(const Dataset& data, const ExperimentPlan& plan) {
  plan.validate();
  FoldPlan out;
  for (std::size_t r = 0; r < plan.repetitions; ++r) {
    const auto outer = stratified_folds(data.labels, data.classes, plan.folds, derive_seed(plan.seed, {r}));
    for (std::size_t f = 0; f < plan.folds; ++f) {
      OuterSplit s;
      s.repetition = r;
      s.fold = f;
      for (std::size_t i = 0; i < data.size(); ++i) (outer[i] == f ? s.test : s.train).push_back(i);
      std::vector<Label> sub;
      sub.reserve(s.train.size());
      for (const auto i : s.train) sub.push_back(data.labels[i]);
      const auto inner = stratified_folds(sub, data.classes, plan.inner_folds, derive_seed(plan.seed, {r, f}));
      for (std::size_t j = 0; j < plan.inner_folds; ++j) {
        InnerSplit in;
        for (std::size_t l = 0; l < s.train.size(); ++l) (inner[l] == j ? in.validation : in.train).push_back(s.train[l]);
        s.inner.push_back(std::move(in));
      }
      out.splits.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::string> find_leakage(const FoldPlan& plan, std::size_t n) {
  std::vector<std::string> issues;
  for (const auto& s : plan.splits) {
    const std::string where = "repetition " + std::to_string(s.repetition) + " fold " + std::to_string(s.fold);
    std::vector<int> role(n, 0);  // 1 train, 2 test
    for (const auto i : s.train) role[i] |= 1;
    for (const auto i : s.test) role[i] |= 2;
    for (std::size_t i = 0; i < n; ++i) {
      if (role[i] == 3) issues.push_back(where + ": index " + std::to_string(i) + " is in both train and test");
      if (role[i] == 0) issues.push_back(where + ": index " + std::to_string(i) + " is in neither partition");
    }
    for (std::size_t j = 0; j < s.inner.size(); ++j) {
      for (const auto* part : {&s.inner[j].train, &s.inner[j].validation}) {
        for (const auto i : *part) {
          if (i >= n || role[i] != 1) {
            issues.push_back(where + " inner " + std::to_string(j) + ": index " + std::to_string(i) +
                             " is outside the outer training set");
          }
        }
      }
    }
  }
  return issues;
}

ParameterSpace search_space(std::size_t classes, bool abstaining) {
  ParameterSpace s;
  if (abstaining) {
    s.lower.assign(classes, 0.0);
    s.upper.assign(classes, 1.0 - kEdge);
    s.sum_upper = static_cast<double>(classes - 1) - kEdge;
  } else {
    s.lower.assign(classes - 1, kEdge);
    s.upper.assign(classes - 1, 1.0 - kEdge);
  }
  return s;
}

std::vector<double> to_params(std::span<const double> coords, bool abstaining) {
  if (abstaining) return {coords.begin(), coords.end()};
  std::vector<double> alpha;
  alpha.reserve(coords.size() + 1);
  for (const double u : coords) alpha.push_back(u / (1.0 - u));
  alpha.push_back(1.0);
  return alpha;
}

namespace {

std::vector<Label> decide(const ProbTable& probs, const std::vector<double>& params, bool abstaining) {
  if (abstaining) return decide_abstaining(probs, ParamVector::rejection_thresholds(params));
  return decide_weighted(probs, ParamVector::weights(params));
}

std::vector<Label> labels_of(const Dataset& data, const std::vector<std::size_t>& idx) {
  std::vector<Label> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(data.labels[i]);
  return out;
}

// Report averaged field by field; used for the SMOTE amount sweep.
MetricReport average_reports(const std::vector<MetricReport>& reports) {
  MetricReport out = reports.front();
  const double n = static_cast<double>(reports.size());
  auto avg = [&](auto get) {
    double s = 0.0;
    for (const auto& r : reports) s += get(r);
    return s / n;
  };
  out.ni = avg([](const MetricReport& r) { return r.ni; });
  out.accuracy = avg([](const MetricReport& r) { return r.accuracy; });
  out.error = avg([](const MetricReport& r) { return r.error; });
  out.reject = avg([](const MetricReport& r) { return r.reject; });
  out.gmean = avg([](const MetricReport& r) { return r.gmean; });
  if (out.fmeasure) out.fmeasure = avg([](const MetricReport& r) { return *r.fmeasure; });
  for (std::size_t i = 0; i < out.class_error.size(); ++i) {
    out.class_error[i] = avg([i](const MetricReport& r) { return r.class_error[i]; });
    out.class_reject[i] = avg([i](const MetricReport& r) { return r.class_reject[i]; });
    out.class_accuracy[i] = avg([i](const MetricReport& r) { return r.class_accuracy[i]; });
  }
  return out;
}

struct Prepared {
  Matrix scaled;  // every row, rescaled with the applicable statistics
};

Dataset rows_of(const Dataset& data, const Matrix& scaled, const std::vector<std::size_t>& idx) {
  Dataset d;
  d.features = scaled.select_rows(idx);
  d.labels = labels_of(data, idx);
  d.classes = data.classes;
  d.class_names = data.class_names;
  return d;
}

std::vector<std::size_t> counts_of(const Dataset& d) { return d.class_counts(); }

void summarize(CvResult& res) {
  const std::size_t m = res.classes;
  const auto cols = metric_columns(m).size();
  res.metric_mean.assign(cols, std::nullopt);
  res.metric_sd.assign(cols, std::nullopt);
  std::vector<std::vector<std::optional<double>>> rows;
  for (const auto& f : res.folds) rows.push_back(flatten(f.metrics, m));
  const double n = static_cast<double>(rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    bool present = !rows.empty();
    double sum = 0.0;
    for (const auto& r : rows) {
      if (!r[c]) present = false; else sum += *r[c];
    }
    if (!present) continue;
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (*r[c] - mean) * (*r[c] - mean);
    res.metric_mean[c] = mean;
    res.metric_sd[c] = rows.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  if (!res.folds.empty() && !res.folds.front().params.empty()) {
    const std::size_t p = res.folds.front().params.size();
    res.param_mean.assign(p, 0.0);
    res.param_sd.assign(p, 0.0);
    for (const auto& f : res.folds) {
      for (std::size_t i = 0; i < p; ++i) res.param_mean[i] += f.params[i] / n;
    }
    for (const auto& f : res.folds) {
      for (std::size_t i = 0; i < p; ++i) res.param_sd[i] += (f.params[i] - res.param_mean[i]) * (f.params[i] - res.param_mean[i]);
    }
    for (auto& v : res.param_sd) v = res.folds.size() > 1 ? std::sqrt(v / (n - 1.0)) : 0.0;
  }
}

Matrix scale_for(const Dataset& data, const OuterSplit& split, bool paper_scaling) {
  if (paper_scaling) return MinMaxScaler::fit(data.features).apply(data.features);
  return MinMaxScaler::fit(data.features.select_rows(split.train)).apply(data.features);
}

}  // namespace

std::vector<std::string> metric_columns(std::size_t classes) {
  std::vector<std::string> cols;
  for (std::size_t i = 1; i <= classes; ++i) cols.push_back("E_" + std::to_string(i));
  cols.emplace_back("E");
  cols.emplace_back("A");
  for (std::size_t i = 1; i <= classes; ++i) cols.push_back("Rej_" + std::to_string(i));
  cols.emplace_back("Rej");
  cols.emplace_back("G");
  cols.emplace_back("F");
  cols.emplace_back("NI");
  return cols;
}

std::vector<std::optional<double>> flatten(const MetricReport& r, std::size_t classes) {
  std::vector<std::optional<double>> v;
  for (std::size_t i = 0; i < classes; ++i) v.emplace_back(r.class_error[i]);
  v.emplace_back(r.error);
  v.emplace_back(r.accuracy);
  for (std::size_t i = 0; i < classes; ++i) {
    v.push_back(r.abstaining ? std::optional<double>(r.class_reject[i]) : std::nullopt);
  }
  v.push_back(r.abstaining ? std::optional<double>(r.reject) : std::nullopt);
  v.emplace_back(r.gmean);
  v.push_back(r.fmeasure);
  v.emplace_back(r.ni);
  return v;
}

CvResult nested_cv_run(const Dataset& data, const ExperimentPlan& plan, const RunOptions& options) {
  data.validate();
  const FoldPlan folds = make_fold_plan(data, plan);
  if (const auto leaks = find_leakage(folds, data.size()); !leaks.empty()) {
    throw std::logic_error("nested_cv_run: fold plan leaks: " + leaks.front());
  }
  const std::size_t m = data.classes;
  const bool abstaining = method_abstains(plan.method);
  const bool use_ni = plan.method == Method::NI || plan.method == Method::NIReject;
  auto observe = [&](const OuterSplit& s, Stage st, const std::vector<std::size_t>& idx) {
    if (options.observer) options.observer(s, st, idx);
  };

  CvResult res;
  res.method = plan.method;
  res.classes = m;
  for (const auto& split : folds.splits) {
    const Matrix scaled = scale_for(data, split, plan.paper_scaling);
    observe(split, Stage::OuterTrain, split.train);
    observe(split, Stage::OuterTest, split.test);
    const Dataset train = rows_of(data, scaled, split.train);
    const Matrix test_x = scaled.select_rows(split.test);
    const auto test_y = labels_of(data, split.test);

    FoldRecord rec;
    rec.repetition = split.repetition;
    rec.fold = split.fold;
    auto evaluate = [&](const std::vector<Label>& y) { return report(build_confusion(test_y, y, m), abstaining); };

    switch (plan.method) {
      case Method::Plain: {
        const auto probs = fit_predict(plan.classifier, train, test_x);
        rec.metrics = evaluate(decide_weighted(probs, ParamVector::weights(std::vector<double>(m, 1.0))));
        break;
      }
      case Method::CostSensitive: {
        const auto probs = fit_predict(plan.classifier, train, test_x);
        rec.metrics = evaluate(cost_sensitive_decide(probs, counts_of(train)));
        break;
      }
      case Method::Chow: {
        const auto probs = fit_predict(plan.classifier, train, test_x);
        rec.params.assign(m, plan.chow_threshold);
        rec.metrics = evaluate(chow_reject_decide(probs, plan.chow_threshold));
        break;
      }
      case Method::Smote: {
        std::vector<Label> minority;
        for (std::size_t c = 1; c < m; ++c) minority.push_back(static_cast<Label>(c));
        std::vector<MetricReport> reports;
        for (const auto amount : plan.smote.amounts) {
          const auto seed = derive_seed(plan.seed, {split.repetition, split.fold, amount, 0x5307e});
          const auto grown = smote_oversample(train, minority, amount, plan.smote.k_neighbors, seed);
          const auto probs = fit_predict(plan.classifier, grown, test_x);
          reports.push_back(evaluate(decide_weighted(probs, ParamVector::weights(std::vector<double>(m, 1.0)))));
        }
        rec.metrics = average_reports(reports);
        break;
      }
      case Method::GMean:
      case Method::GMeanReject:
      case Method::NI:
      case Method::NIReject: {
        const auto space = search_space(m, abstaining);
        std::vector<double> mean(space.dimension(), 0.0);
        for (std::size_t j = 0; j < split.inner.size(); ++j) {
          const auto& in = split.inner[j];
          observe(split, Stage::InnerTrain, in.train);
          observe(split, Stage::InnerValidation, in.validation);
          const Dataset inner_train = rows_of(data, scaled, in.train);
          const auto probs = fit_predict(plan.classifier, inner_train, scaled.select_rows(in.validation));
          const auto targets = labels_of(data, in.validation);
          if (options.keep_validation_scores && m == 2) {
            ScoredSet s;
            for (std::size_t l = 0; l < targets.size(); ++l) {
              (targets[l] == 1 ? s.positive_scores : s.negative_scores).push_back(probs(l, 1));
            }
            res.validation_scores.push_back(std::move(s));
          }
          const Objective objective = [&](std::span<const double> coords) {
            const auto cm = build_confusion(targets, decide(probs, to_params(coords, abstaining), abstaining), m);
            return use_ni ? normalized_mutual_information(cm) : gmean_objective(cm);
          };
          PowellConfig cfg = plan.optimizer;
          cfg.seed = derive_seed(plan.seed, {split.repetition, split.fold, j, 0x0b7});
          const auto best = powell_maximize(objective, space, cfg);
          for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += best.best_point[d] / static_cast<double>(split.inner.size());
        }
        space.project(mean);
        rec.params = to_params(mean, abstaining);
        const auto probs = fit_predict(plan.classifier, train, test_x);
        rec.metrics = evaluate(decide(probs, rec.params, abstaining));
        break;
      }
    }
    res.folds.push_back(std::move(rec));
  }
  summarize(res);
  return res;
}

CvResult fixed_params_run(const Dataset& data, const ExperimentPlan& plan, const std::vector<double>& params,
                          bool abstaining) {
  data.validate();
  if (params.size() != data.classes) throw std::invalid_argument("fixed_params_run: need one parameter per class");
  const FoldPlan folds = make_fold_plan(data, plan);
  CvResult res;
  res.method = plan.method;
  res.classes = data.classes;
  for (const auto& split : folds.splits) {
    const Matrix scaled = scale_for(data, split, plan.paper_scaling);
    const auto probs = fit_predict(plan.classifier, rows_of(data, scaled, split.train), scaled.select_rows(split.test));
    const auto y = decide(probs, params, abstaining);
    FoldRecord rec{split.repetition, split.fold,
                   report(build_confusion(labels_of(data, split.test), y, data.classes), abstaining), params};
    res.folds.push_back(std::move(rec));
  }
  summarize(res);
  return res;
}

std::string format_value(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

std::string results_csv(const std::vector<CvResult>& results, bool sd) {
  std::ostringstream os;
  const std::size_t m = results.empty() ? 2 : results.front().classes;
  os << "method";
  for (const auto& c : metric_columns(m)) os << ',' << c;
  os << '\n';
  for (const auto& r : results) {
    os << method_name(r.method);
    for (const auto& v : sd ? r.metric_sd : r.metric_mean) os << ',' << format_value(v);
    os << '\n';
  }
  return os.str();
}

std::string params_csv(const std::vector<CvResult>& results) {
  std::ostringstream os;
  const std::size_t m = results.empty() ? 2 : results.front().classes;
  os << "method,kind";
  for (std::size_t i = 1; i <= m; ++i) os << ",mean_" << i;
  for (std::size_t i = 1; i <= m; ++i) os << ",sd_" << i;
  os << '\n';
  for (const auto& r : results) {
    const bool has = !r.param_mean.empty();
    os << method_name(r.method) << ',' << (has ? (method_abstains(r.method) ? "tr" : "alpha") : "NA");
    for (std::size_t i = 0; i < m; ++i) os << ',' << format_value(has ? std::optional(r.param_mean[i]) : std::nullopt);
    for (std::size_t i = 0; i < m; ++i) os << ',' << format_value(has ? std::optional(r.param_sd[i]) : std::nullopt);
    os << '\n';
  }
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text, BenchmarkFiles& files) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
  os << text;
  files.written.push_back(p.string());
}

std::string percent(const std::optional<double>& v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
  return buf;
}

}  // namespace

BenchmarkFiles run_benchmark(const std::vector<ExperimentPlan>& plans, const std::vector<NamedDataset>& datasets,
                             const std::string& out_dir) {
  if (plans.empty()) throw std::invalid_argument("run_benchmark: no plans");
  std::filesystem::create_directories(out_dir);
  BenchmarkFiles files;
  std::ostringstream md;
  md << "# Benchmark summary\n";
  for (const auto& ds : datasets) {
    std::vector<CvResult> results;
    for (const auto& plan : plans) results.push_back(nested_cv_run(ds.data, plan, {}));
    const std::filesystem::path dir(out_dir);
    write_file(dir / (ds.name + "_results.csv"), results_csv(results, false), files);
    write_file(dir / (ds.name + "_sd.csv"), results_csv(results, true), files);
    write_file(dir / (ds.name + "_params.csv"), params_csv(results), files);

    const auto counts = ds.data.class_counts();
    md << "\n## " << ds.name << "\n\n" << ds.data.size() << " instances, " << ds.data.dimension()
       << " features, class sizes";
    for (const auto c : counts) md << ' ' << c;
    md << ".\n\n| method | E (%) | A (%) | Rej (%) | G (%) | F (%) | NI |\n|---|---|---|---|---|---|---|\n";
    const std::size_t m = ds.data.classes;
    for (const auto& r : results) {
      const auto& v = r.metric_mean;
      md << "| " << method_name(r.method) << " | " << percent(v[m]) << " | " << percent(v[m + 1]) << " | "
         << percent(v[2 * m + 2]) << " | " << percent(v[2 * m + 3]) << " | " << percent(v[2 * m + 4]) << " | "
         << (v[2 * m + 5] ? format_value(v[2 * m + 5]).substr(0, 6) : "--") << " |\n";
    }
  }
  write_file(std::filesystem::path(out_dir) / "summary.md", md.str(), files);
  return files;
}

}  // namespace cfl
