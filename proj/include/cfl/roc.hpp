#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfl/costs.hpp"

namespace cfl {

struct ClassPriors {
  double negative = 0.5;
  double positive = 0.5;
  double ratio() const { return negative / positive; }  // p(N) / p(P)
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  // Scores >= threshold are called positive.
  double threshold = 0.0;
};

// Points ordered by descending threshold, from (0, 0) to (1, 1).
struct RocCurve {
  std::vector<RocPoint> points;
  ClassPriors priors;
};

// One point per distinct score plus both endpoints. Throws when either list is empty.
RocCurve roc_from_scores(std::span<const double> pos_scores, std::span<const double> neg_scores);

// Trapezoidal area under the (fpr, tpr) polyline.
double auc(std::span<const RocPoint> points);
inline double auc(const RocCurve& curve) { return auc(curve.points); }

struct HullVertex {
  double fpr = 0.0;
  double tpr = 0.0;
  // Slope of the incoming segment; +infinity for the first vertex.
  double slope = 0.0;
  double threshold = 0.0;
};

class RocchHull {
 public:
  // Takes vertices as given (e.g. a published table); slopes must strictly decrease.
  static RocchHull from_vertices(std::vector<HullVertex> vertices);

  const std::vector<HullVertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  // Slope leaving vertex i; -infinity for the last vertex.
  double outgoing_slope(std::size_t i) const;
  double area() const;

 private:
  friend RocchHull rocch(std::span<const RocPoint> points);
  std::vector<HullVertex> vertices_;
};

// Upper convex hull by monotone chain; collinear points are dropped.
RocchHull rocch(const RocCurve& curve);
RocchHull rocch(std::span<const RocPoint> points);

// 101 evenly spaced thresholds from 1 down to 0.
std::vector<double> default_threshold_grid();

// At every grid threshold, the mean (fpr, tpr) of each curve's operating point
// (the point with the smallest curve threshold >= t). Throws on empty input.
RocCurve threshold_average(const std::vector<RocCurve>& curves,
                           const std::vector<double>& grid = default_threshold_grid());

struct OperatingSlope {
  double k = 0.0;
  // Set when p(P) == 0 and the slope is infinite.
  std::optional<std::string> diagnostic;
  bool infinite() const { return diagnostic.has_value(); }
};

// K = p(N) / p(P) * lambda_FP.
OperatingSlope operating_slope(const NormalizedCostMatrix& ncm, const ClassPriors& priors);

struct AbstainingSlopes {
  double k_n = 0.0;
  double k_p = 0.0;
  bool feasible = false;  // k_n < k_p
};

// K_N = r * trn / (1 - trn), K_P = r * (1 - trp) / trp with r = p(N) / p(P).
// Throws when trp == 0 or trn >= 1.
AbstainingSlopes abstaining_slopes(double trn, double trp, const ClassPriors& priors);
// K_N = r * lambda_RN / (1 - lambda_RP), K_P = r * (lambda_FP - lambda_RN) / lambda_RP.
AbstainingSlopes abstaining_slopes_from_costs(const NormalizedCostMatrix& ncm, const ClassPriors& priors);

// For each slope K, the vertex with incoming slope >= K > outgoing slope.
std::vector<std::size_t> locate_operating_points(const RocchHull& hull, std::span<const double> slopes);

}  // namespace cfl
