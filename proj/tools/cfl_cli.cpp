#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cfl/costs.hpp"
#include "cfl/harness.hpp"
#include "cfl/roc.hpp"

namespace {

struct CommonOptions {
  std::string dataset;
  std::string label_col;
  std::string positive;
  std::string classifier = "knn";
  std::size_t k = 11;
  std::size_t folds = 3;
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::string out;
  bool paper_scaling = false;
};

void add_data_options(CLI::App* app, CommonOptions& o) {
  app->add_option("--dataset", o.dataset, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  app->add_option("--label-col", o.label_col, "label column name or 0-based index (default: last)");
  app->add_option("--positive", o.positive, "label value treated as the positive class (one-vs-rest)");
}

void add_run_options(CLI::App* app, CommonOptions& o) {
  app->add_option("--classifier", o.classifier, "base classifier")->check(CLI::IsMember({"knn", "parzen"}));
  app->add_option("--k", o.k, "kNN neighbour count");
  app->add_option("--folds", o.folds, "outer cross-validation folds");
  app->add_option("--reps", o.reps, "cross-validation repetitions");
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--restarts", o.restarts, "optimizer restarts per inner fold");
  app->add_option("--out", o.out, "output directory");
  app->add_flag("--paper-scaling", o.paper_scaling, "rescale with whole-data statistics");
}

cfl::Dataset load(const CommonOptions& o) {
  cfl::CsvSpec spec;
  spec.label_column = o.label_col;
  if (!o.positive.empty()) spec.positive_class = o.positive;
  return cfl::ingest_csv(o.dataset, spec);
}

cfl::ExperimentPlan make_plan(const CommonOptions& o, cfl::Method method) {
  cfl::ExperimentPlan plan;
  plan.method = method;
  plan.classifier.kind = cfl::parse_classifier(o.classifier);
  plan.classifier.k = o.k;
  plan.folds = o.folds;
  plan.repetitions = o.reps;
  plan.seed = o.seed;
  plan.optimizer.restarts = o.restarts;
  plan.paper_scaling = o.paper_scaling;
  return plan;
}

std::string dataset_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void emit(const CommonOptions& o, const std::string& file, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(o.out);
  std::ofstream os(std::filesystem::path(o.out) / file, std::ios::binary);
  os << text;
  std::cerr << "wrote " << (std::filesystem::path(o.out) / file).string() << '\n';
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-free learning: NI-optimal decisions, equivalent costs and ROC geometry"};
  app.require_subcommand(1);
  CommonOptions o;
  std::string method = "ni";
  std::vector<std::string> methods;

  auto* optimize = app.add_subcommand("optimize", "nested cross-validation of one method; prints metrics and parameters");
  add_data_options(optimize, o);
  add_run_options(optimize, o);
  optimize->add_option("--method", method, "decision method")
      ->check(CLI::IsMember({"plain", "smote", "costsens", "chow", "gmean", "gmean-rej", "ni", "ni-rej"}));

  std::string alpha_list, tr_list;
  auto* evaluate = app.add_subcommand("evaluate", "cross-validated metrics for fixed weights or thresholds");
  add_data_options(evaluate, o);
  add_run_options(evaluate, o);
  evaluate->add_option("--alpha", alpha_list, "comma-separated weights, one per class");
  evaluate->add_option("--tr", tr_list, "comma-separated rejection thresholds, one per class");

  std::string name = "data";
  double alpha_n = 0.0, trn = 0.0, trp = 0.0;
  auto* derive = app.add_subcommand("derive-costs", "equivalent costs from optimal binary parameters");
  derive->add_option("--name", name, "data set label for the row");
  derive->add_option("--alpha-n", alpha_n, "optimal negative-class weight")->required();
  derive->add_option("--trn", trn, "optimal negative-class rejection threshold")->required();
  derive->add_option("--trp", trp, "optimal positive-class rejection threshold")->required();

  auto* roc = app.add_subcommand("roc", "threshold-averaged validation ROC and its convex hull");
  add_data_options(roc, o);
  add_run_options(roc, o);

  auto* bench = app.add_subcommand("benchmark", "every method on one data set; CSV tables and a Markdown summary");
  add_data_options(bench, o);
  add_run_options(bench, o);
  bench->add_option("--method", methods, "methods to run (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimize) {
      const auto data = load(o);
      const auto res = cfl::nested_cv_run(data, make_plan(o, cfl::parse_method(method)));
      emit(o, dataset_name(o.dataset) + "_" + method + "_results.csv", cfl::results_csv({res}, false));
      emit(o, dataset_name(o.dataset) + "_" + method + "_params.csv", cfl::params_csv({res}));
    } else if (*evaluate) {
      if (alpha_list.empty() == tr_list.empty()) throw std::invalid_argument("give exactly one of --alpha or --tr");
      const auto data = load(o);
      const bool abstaining = !tr_list.empty();
      auto plan = make_plan(o, abstaining ? cfl::Method::Chow : cfl::Method::Plain);
      const auto res = cfl::fixed_params_run(data, plan, parse_list(abstaining ? tr_list : alpha_list), abstaining);
      emit(o, dataset_name(o.dataset) + "_evaluate.csv", cfl::results_csv({res}, false));
    } else if (*derive) {
      const double lfp = cfl::equivalent_misclassification_cost(alpha_n);
      const auto c = cfl::equivalent_rejection_costs(trn, trp, lfp);
      const auto feas = cfl::check_feasibility_p1p3(trn, trp, lfp);
      std::cout << "data_set,alpha_n,trn,trp,lambda_rn,lambda_rp,elkan_threshold,p1p3_consistent,bands_satisfied\n"
                << name << ',' << fmt4(lfp) << ',' << fmt4(trn) << ',' << fmt4(trp) << ',' << fmt4(c.lambda_rn) << ','
                << fmt4(c.lambda_rp) << ',' << fmt4(cfl::elkan_threshold({lfp, {}, {}})) << ','
                << (feas.consistent() ? "yes" : "no") << ',' << (feas.satisfied() ? "yes" : "no") << '\n';
    } else if (*roc) {
      const auto data = load(o);
      if (data.classes != 2) throw std::invalid_argument("roc needs a binary data set");
      cfl::RunOptions ro;
      ro.keep_validation_scores = true;
      const auto res = cfl::nested_cv_run(data, make_plan(o, cfl::Method::NI), ro);
      std::vector<cfl::RocCurve> curves;
      for (const auto& s : res.validation_scores) curves.push_back(cfl::roc_from_scores(s.positive_scores, s.negative_scores));
      const auto avg = cfl::threshold_average(curves);
      const auto hull = cfl::rocch(avg);
      std::ostringstream cs, hs;
      cs << "fpr,tpr,threshold\n";
      for (const auto& p : avg.points) cs << fmt4(p.fpr) << ',' << fmt4(p.tpr) << ',' << fmt4(p.threshold) << '\n';
      hs << "index,fpr,tpr,slope,threshold\n";
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& v = hull.vertices()[i];
        hs << i + 1 << ',' << fmt4(v.fpr) << ',' << fmt4(v.tpr) << ',' << fmt4(v.slope) << ',' << fmt4(v.threshold) << '\n';
      }
      emit(o, dataset_name(o.dataset) + "_roc_curve.csv", cs.str());
      emit(o, dataset_name(o.dataset) + "_rocch.csv", hs.str());
    } else if (*bench) {
      const auto data = load(o);
      std::vector<cfl::ExperimentPlan> plans;
      if (methods.empty()) {
        for (const auto m : cfl::all_methods()) plans.push_back(make_plan(o, m));
      } else {
        for (const auto& m : methods) plans.push_back(make_plan(o, cfl::parse_method(m)));
      }
      const auto files = cfl::run_benchmark(plans, {{dataset_name(o.dataset), data}}, o.out.empty() ? "results" : o.out);
      for (const auto& f : files.written) std::cerr << "wrote " << f << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
