#include "cfl/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfl/diagnostics.hpp"

namespace cfl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RocCurve roc_from_scores(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) throw std::invalid_argument("roc_from_scores: empty class");
  std::vector<std::pair<double, bool>> all;
  all.reserve(pos_scores.size() + neg_scores.size());
  for (const double s : pos_scores) all.emplace_back(s, true);
  for (const double s : neg_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  const double np = static_cast<double>(pos_scores.size());
  const double nn = static_cast<double>(neg_scores.size());
  RocCurve curve;
  curve.priors = {nn / (np + nn), np / (np + nn)};
  curve.points.push_back({0.0, 0.0, kInf});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < all.size();) {
    const double s = all[i].first;
    for (; i < all.size() && all[i].first == s; ++i) (all[i].second ? tp : fp) += 1;
    curve.points.push_back({static_cast<double>(fp) / nn, static_cast<double>(tp) / np, s});
  }
  return curve;
}

double auc(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

RocchHull RocchHull::from_vertices(std::vector<HullVertex> vertices) {
  if (vertices.empty()) throw std::invalid_argument("RocchHull: no vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i].slope < vertices[i - 1].slope)) {
      throw std::invalid_argument("RocchHull: vertex slopes must strictly decrease");
    }
  }
  RocchHull h;
  h.vertices_ = std::move(vertices);
  return h;
}

double RocchHull::outgoing_slope(std::size_t i) const {
  return i + 1 < vertices_.size() ? vertices_[i + 1].slope : -kInf;
}

double RocchHull::area() const {
  double a = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    a += (vertices_[i].fpr - vertices_[i - 1].fpr) * (vertices_[i].tpr + vertices_[i - 1].tpr) * 0.5;
  }
  return a;
}

RocchHull rocch(std::span<const RocPoint> points) {
  std::vector<RocPoint> pts(points.begin(), points.end());
  pts.push_back({0.0, 0.0, kInf});
  pts.push_back({1.0, 1.0, -kInf});
  std::stable_sort(pts.begin(), pts.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.fpr < b.fpr || (a.fpr == b.fpr && a.tpr < b.tpr);
  });
  std::vector<RocPoint> chain;
  // Upper hull: drop the middle point unless it makes a strict right turn.
  // Rates are ratios of counts, so collinear triples may carry rounding noise.
  constexpr double kCollinear = 1e-12;
  for (const auto& p : pts) {
    while (chain.size() >= 2) {
      const auto& o = chain[chain.size() - 2];
      const auto& a = chain.back();
      const double cross = (a.fpr - o.fpr) * (p.tpr - o.tpr) - (a.tpr - o.tpr) * (p.fpr - o.fpr);
      if (cross >= -kCollinear) chain.pop_back(); else break;
    }
    if (!chain.empty() && chain.back().fpr == p.fpr && chain.back().tpr == p.tpr) continue;
    chain.push_back(p);
  }
  RocchHull hull;
  hull.vertices_.reserve(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    double slope = kInf;
    if (i > 0) {
      const double dx = chain[i].fpr - chain[i - 1].fpr;
      slope = dx > 0.0 ? (chain[i].tpr - chain[i - 1].tpr) / dx : kInf;
    }
    hull.vertices_.push_back({chain[i].fpr, chain[i].tpr, slope, chain[i].threshold});
  }
  return hull;
}

RocchHull rocch(const RocCurve& curve) { return rocch(std::span<const RocPoint>(curve.points)); }

std::vector<double> default_threshold_grid() {
  std::vector<double> grid(101);
  for (std::size_t i = 0; i <= 100; ++i) grid[i] = static_cast<double>(100 - i) / 100.0;
  return grid;
}

RocCurve threshold_average(const std::vector<RocCurve>& curves, const std::vector<double>& grid) {
  if (curves.empty()) throw std::invalid_argument("threshold_average: no curves");
  if (grid.empty()) throw std::invalid_argument("threshold_average: empty threshold grid");
  std::vector<double> thresholds = grid;
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  RocCurve out;
  const double count = static_cast<double>(curves.size());
  out.priors = {0.0, 0.0};
  for (const auto& c : curves) {
    out.priors.negative += c.priors.negative / count;
    out.priors.positive += c.priors.positive / count;
  }
  out.points.push_back({0.0, 0.0, kInf});
  for (const double t : thresholds) {
    RocPoint mean{0.0, 0.0, t};
    for (const auto& c : curves) {
      // Points are ordered by descending threshold; take the last one still >= t.
      const RocPoint* op = &c.points.front();
      for (const auto& p : c.points) {
        if (p.threshold >= t) op = &p; else break;
      }
      mean.fpr += op->fpr / count;
      mean.tpr += op->tpr / count;
    }
    out.points.push_back(mean);
  }
  out.points.push_back({1.0, 1.0, -kInf});
  return out;
}

OperatingSlope operating_slope(const NormalizedCostMatrix& ncm, const ClassPriors& priors) {
  if (priors.positive == 0.0) {
    OperatingSlope s{kInf, "p(P) = 0: slope is infinite, the operating point degenerates to E_P=1, A_P=0"};
    warn(*s.diagnostic);
    return s;
  }
  return {priors.ratio() * ncm.lambda_fp, std::nullopt};
}

AbstainingSlopes abstaining_slopes(double trn, double trp, const ClassPriors& priors) {
  if (trp == 0.0) throw std::invalid_argument("abstaining_slopes: T_rP = 0 gives an infinite K_P");
  if (!(trn < 1.0)) throw std::invalid_argument("abstaining_slopes: T_rN must be below 1");
  const double r = priors.ratio();
  AbstainingSlopes s{r * trn / (1.0 - trn), r * (1.0 - trp) / trp, false};
  s.feasible = trn + trp < 1.0;
  return s;
}

AbstainingSlopes abstaining_slopes_from_costs(const NormalizedCostMatrix& ncm, const ClassPriors& priors) {
  if (!ncm.lambda_rn || !ncm.lambda_rp) throw std::invalid_argument("abstaining_slopes_from_costs: no rejection costs");
  const double rn = *ncm.lambda_rn, rp = *ncm.lambda_rp;
  if (rp == 0.0 || rp == 1.0) throw std::invalid_argument("abstaining_slopes_from_costs: lambda_RP must differ from 0 and 1");
  const double r = priors.ratio();
  AbstainingSlopes s{r * rn / (1.0 - rp), r * (ncm.lambda_fp - rn) / rp, false};
  s.feasible = s.k_n < s.k_p;
  return s;
}

std::vector<std::size_t> locate_operating_points(const RocchHull& hull, std::span<const double> slopes) {
  std::vector<std::size_t> out;
  out.reserve(slopes.size());
  const auto& v = hull.vertices();
  for (const double k : slopes) {
    // Slopes steeper than every vertex map to the leftmost one, flatter to the rightmost.
    std::size_t found = v.empty() || k > v.front().slope ? 0 : v.size() - 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].slope >= k && k > hull.outgoing_slope(i)) {
        found = i;
        break;
      }
    }
    out.push_back(found);
  }
  return out;
}

}  // namespace cfl
