#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfl {

// Binary costs after subtracting the true-class cost and dividing by
// beta = lambda_FN - lambda_TP, so lambda_TN = lambda_TP = 0 and lambda_FN = 1.
// N is class 0, P is class 1.
struct NormalizedCostMatrix {
  double lambda_fp = 1.0;
  std::optional<double> lambda_rn;
  std::optional<double> lambda_rp;

  bool abstaining() const { return lambda_rn.has_value(); }
  // 0 < lambda_rn < lambda_fp and 0 < lambda_rp < 1.
  bool rejection_feasible() const;
};

// lambda(i, j) is the cost of deciding j for target i; an optional column m
// holds rejection costs.
class RawCostMatrix {
 public:
  // Rows must share a width of m or m + 1, and lambda_ii <= lambda_ij.
  explicit RawCostMatrix(std::vector<std::vector<double>> rows);

  std::size_t classes() const { return rows_.size(); }
  bool has_reject_column() const { return rows_.front().size() == rows_.size() + 1; }
  double operator()(std::size_t target, std::size_t decision) const { return rows_[target][decision]; }

 private:
  std::vector<std::vector<double>> rows_;
};

// Throws std::invalid_argument for m != 2, a missing reject column when
// `abstaining` is set, or beta <= 0.
NormalizedCostMatrix normalize(const RawCostMatrix& raw, bool abstaining);

// sum_ij lambda_ij * p(j | i) * p(i). rates[i][j] is p(j | i) over the same
// decision columns as `raw`.
double risk(const RawCostMatrix& raw, const std::vector<std::vector<double>>& rates,
            const std::vector<double>& priors);

// Cost-sensitive positive-class threshold lambda_FP / (1 + lambda_FP).
double elkan_threshold(const NormalizedCostMatrix& ncm);

// The normalized false-positive cost implied by the optimal negative-class
// weight; it is the weight itself. Warns when alpha_n >= 1.
double equivalent_misclassification_cost(double alpha_n);

struct RejectionCosts {
  double lambda_rn = 0.0;
  double lambda_rp = 0.0;
};

// Rejection costs that make the cost-sensitive abstaining rule reproduce the
// thresholds (trn, trp). Throws when trn + trp == 1.
RejectionCosts equivalent_rejection_costs(double trn, double trp, double lambda_fp);

struct RejectionThresholds {
  double trn = 0.0;
  double trp = 0.0;
};

// Inverse of equivalent_rejection_costs. Throws on a zero denominator or a
// non-abstaining matrix.
RejectionThresholds rejection_thresholds_from_costs(const NormalizedCostMatrix& ncm);

struct FeasibilityReport {
  double alpha_n = 0.0;
  double trn_bound = 0.0;  // alpha_n / (1 + alpha_n)
  double trp_bound = 0.0;  // 1 / (1 + alpha_n)
  double lambda_rn = 0.0;
  double lambda_rp = 0.0;
  bool trn_in_band = false;  // 0 < trn < trn_bound
  bool trp_in_band = false;  // 0 < trp < trp_bound
  bool costs_in_band = false;  // 0 < lambda_rn < alpha_n and 0 < lambda_rp < 1
  // Each implication P1, P2, P3 holds (a false premise holds vacuously).
  bool p1 = false;
  bool p2 = false;
  bool p3 = false;
  bool consistent() const { return p1 && p2 && p3; }
  // Every band holds strictly.
  bool satisfied() const { return trn_in_band && trp_in_band && costs_in_band; }
  std::vector<std::string> notes;
};

// P1: costs in band => trn < trn_bound. P2: costs in band => trp < trp_bound.
// P3: both thresholds in band => costs in band. Values on a band edge count
// as outside the band and are listed in `notes`.
FeasibilityReport check_feasibility_p1p3(double trn, double trp, double lambda_fp);

}  // namespace cfl
