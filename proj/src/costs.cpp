#include "cfl/costs.hpp"

#include <cmath>
#include <stdexcept>

#include "cfl/diagnostics.hpp"

namespace cfl {

bool NormalizedCostMatrix::rejection_feasible() const {
  if (!lambda_rn || !lambda_rp) return false;
  return *lambda_rn > 0.0 && *lambda_rn < lambda_fp && *lambda_rp > 0.0 && *lambda_rp < 1.0;
}

RawCostMatrix::RawCostMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  const std::size_t m = rows_.size();
  if (m < 2) throw std::invalid_argument("RawCostMatrix: need at least two classes");
  const std::size_t width = rows_.front().size();
  if (width != m && width != m + 1) throw std::invalid_argument("RawCostMatrix: rows need m or m + 1 entries");
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].size() != width) throw std::invalid_argument("RawCostMatrix: ragged rows");
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i && rows_[i][i] > rows_[i][j]) {
        throw std::invalid_argument("RawCostMatrix: a correct decision must not cost more than an error");
      }
    }
  }
}

NormalizedCostMatrix normalize(const RawCostMatrix& raw, bool abstaining) {
  if (raw.classes() != 2) throw std::invalid_argument("normalize: only binary cost matrices are supported");
  if (abstaining && !raw.has_reject_column()) throw std::invalid_argument("normalize: no rejection column");
  const double tn = raw(0, 0), fp = raw(0, 1), fn = raw(1, 0), tp = raw(1, 1);
  const double beta = fn - tp;
  if (!(beta > 0.0)) throw std::invalid_argument("normalize: lambda_FN - lambda_TP must be positive");
  NormalizedCostMatrix out;
  out.lambda_fp = (fp - tn) / beta;
  if (abstaining) {
    out.lambda_rn = (raw(0, 2) - tn) / beta;
    out.lambda_rp = (raw(1, 2) - tp) / beta;
  }
  return out;
}

double risk(const RawCostMatrix& raw, const std::vector<std::vector<double>>& rates,
            const std::vector<double>& priors) {
  const std::size_t m = raw.classes();
  const std::size_t width = raw.has_reject_column() ? m + 1 : m;
  if (rates.size() != m || priors.size() != m) throw std::invalid_argument("risk: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rates[i].size() != width) throw std::invalid_argument("risk: rate row width differs from cost matrix");
    for (std::size_t j = 0; j < width; ++j) total += raw(i, j) * rates[i][j] * priors[i];
  }
  return total;
}

double elkan_threshold(const NormalizedCostMatrix& ncm) {
  if (!(ncm.lambda_fp > 0.0)) throw std::invalid_argument("elkan_threshold: lambda_FP must be positive");
  return ncm.lambda_fp / (1.0 + ncm.lambda_fp);
}

double equivalent_misclassification_cost(double alpha_n) {
  if (!(alpha_n > 0.0) || !std::isfinite(alpha_n)) {
    throw std::invalid_argument("equivalent_misclassification_cost: alpha_N must be positive");
  }
  if (alpha_n >= 1.0) {
    warn("equivalent misclassification cost: alpha_N >= 1, the misclassification of N is not cheaper than of P");
  }
  return alpha_n;
}

RejectionCosts equivalent_rejection_costs(double trn, double trp, double lambda_fp) {
  const double den = 1.0 - trn - trp;
  if (den == 0.0) throw std::invalid_argument("equivalent_rejection_costs: T_rN + T_rP must differ from 1");
  return {(trn * (1.0 - trp) - trn * trp * lambda_fp) / den,
          (-trn * trp + (1.0 - trn) * trp * lambda_fp) / den};
}

RejectionThresholds rejection_thresholds_from_costs(const NormalizedCostMatrix& ncm) {
  if (!ncm.abstaining() || !ncm.lambda_rp) {
    throw std::invalid_argument("rejection_thresholds_from_costs: matrix has no rejection costs");
  }
  const double rn = *ncm.lambda_rn, rp = *ncm.lambda_rp;
  const double den_n = 1.0 + rn - rp;
  const double den_p = ncm.lambda_fp - rn + rp;
  if (den_n == 0.0 || den_p == 0.0) throw std::invalid_argument("rejection_thresholds_from_costs: zero denominator");
  return {rn / den_n, rp / den_p};
}

FeasibilityReport check_feasibility_p1p3(double trn, double trp, double lambda_fp) {
  FeasibilityReport r;
  r.alpha_n = lambda_fp;
  r.trn_bound = lambda_fp / (1.0 + lambda_fp);
  r.trp_bound = 1.0 / (1.0 + lambda_fp);
  r.trn_in_band = trn > 0.0 && trn < r.trn_bound;
  r.trp_in_band = trp > 0.0 && trp < r.trp_bound;
  if (trn == 0.0 || trn == r.trn_bound) r.notes.push_back("T_rN lies on a band edge");
  if (trp == 0.0 || trp == r.trp_bound) r.notes.push_back("T_rP lies on a band edge");
  if (1.0 - trn - trp == 0.0) {
    r.notes.push_back("T_rN + T_rP = 1: equivalent rejection costs undefined");
    r.p1 = r.p2 = true;
    r.p3 = !(r.trn_in_band && r.trp_in_band);
    return r;
  }
  if (trn + trp > 1.0) r.notes.push_back("T_rN + T_rP > 1: thresholds outside the abstaining domain");
  const auto c = equivalent_rejection_costs(trn, trp, lambda_fp);
  r.lambda_rn = c.lambda_rn;
  r.lambda_rp = c.lambda_rp;
  r.costs_in_band = c.lambda_rn > 0.0 && c.lambda_rn < lambda_fp && c.lambda_rp > 0.0 && c.lambda_rp < 1.0;
  if (c.lambda_rn == 0.0 || c.lambda_rn == lambda_fp) r.notes.push_back("lambda_RN lies on a band edge");
  if (c.lambda_rp == 0.0 || c.lambda_rp == 1.0) r.notes.push_back("lambda_RP lies on a band edge");
  r.p1 = !r.costs_in_band || trn < r.trn_bound;
  r.p2 = !r.costs_in_band || trp < r.trp_bound;
  r.p3 = !(r.trn_in_band && r.trp_in_band) || r.costs_in_band;
  return r;
}

}  // namespace cfl
