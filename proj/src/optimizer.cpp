#include "cfl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cfl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.3819660112501051;

double sanitize(double v) { return std::isnan(v) ? kNegInf : v; }

}  // namespace

void ParameterSpace::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("ParameterSpace: bounds must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw std::invalid_argument("ParameterSpace: zero feasible volume");
  }
  if (sum_upper && !(std::accumulate(lower.begin(), lower.end(), 0.0) < *sum_upper)) {
    throw std::invalid_argument("ParameterSpace: sum bound leaves zero feasible volume");
  }
}

bool ParameterSpace::contains(std::span<const double> x, double slack) const {
  if (x.size() != lower.size()) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] - slack && x[i] <= upper[i] + slack)) return false;
    sum += x[i];
  }
  return !sum_upper || sum <= *sum_upper + slack;
}

std::pair<double, double> ParameterSpace::ray_interval(std::span<const double> x, std::span<const double> d) const {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] > 0.0) {
      hi = std::min(hi, (upper[i] - x[i]) / d[i]);
      lo = std::max(lo, (lower[i] - x[i]) / d[i]);
    } else if (d[i] < 0.0) {
      hi = std::min(hi, (lower[i] - x[i]) / d[i]);
      lo = std::max(lo, (upper[i] - x[i]) / d[i]);
    }
  }
  if (sum_upper) {
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    const double ds = std::accumulate(d.begin(), d.end(), 0.0);
    const double room = *sum_upper - s;
    if (ds > 0.0) hi = std::min(hi, room / ds);
    if (ds < 0.0) lo = std::max(lo, room / ds);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {0.0, 0.0};
  return {std::min(lo, 0.0), std::max(hi, 0.0)};
}

void ParameterSpace::project(std::span<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  if (!sum_upper) return;
  double excess = std::accumulate(x.begin(), x.end(), 0.0) - *sum_upper;
  for (std::size_t i = 0; excess > 0.0 && i < x.size(); ++i) {
    const double take = std::min(excess, x[i] - lower[i]);
    x[i] -= take;
    excess = std::accumulate(x.begin(), x.end(), 0.0) - *sum_upper;
  }
}

std::vector<double> ParameterSpace::sample(Rng& rng) const {
  std::vector<double> x(lower.size());
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lower[i], upper[i]);
    if (contains(x, 0.0)) return x;
  }
  // The sum bound cuts away almost all of the box; shrink toward the lower
  // corner until the draw fits.
  const double base = std::accumulate(lower.begin(), lower.end(), 0.0);
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  const double scale = (*sum_upper - base) / (s - base) * 0.5;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = lower[i] + (x[i] - lower[i]) * scale;
  return x;
}

namespace {

struct Best {
  double eta;
  double value;
  void offer(double e, double v) {
    if (v > value) {
      eta = e;
      value = v;
    }
  }
};

// Brent's parabolic/golden minimization of -f on [a, b], seeded at x with
// known value fx. Every evaluation is offered to `best`.
void brent(const std::function<double(double)>& f, double a, double b, double x, double fx,
           const LineSearchConfig& cfg, Best& best, std::size_t& evals) {
  double w = x, v = x;
  double gx = -fx, gw = gx, gv = gx;
  double d = 0.0, e = 0.0;
  for (std::size_t it = 0; it < cfg.max_steps; ++it) {
    const double xm = 0.5 * (a + b);
    const double tol1 = cfg.tolerance * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1 && std::isfinite(gx) && std::isfinite(gw) && std::isfinite(gv)) {
      double r = (x - w) * (gx - gv);
      double q = (x - v) * (gx - gw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0 ? tol1 : -tol1);
    const double fu = sanitize(f(u));
    ++evals;
    best.offer(u, fu);
    const double gu = -fu;
    if (gu <= gx) {
      if (u >= x) a = x; else b = x;
      v = w; gv = gw;
      w = x; gw = gx;
      x = u; gx = gu;
    } else {
      if (u < x) a = u; else b = u;
      if (gu <= gw || w == x) {
        v = w; gv = gw;
        w = u; gw = gu;
      } else if (gu <= gv || v == x || v == w) {
        v = u; gv = gu;
      }
    }
  }
}

}  // namespace

LineResult line_maximize(const std::function<double(double)>& f, double lo, double hi,
                         const LineSearchConfig& cfg, double incumbent, std::optional<double> incumbent_value) {
  LineResult out;
  incumbent = std::clamp(incumbent, lo, hi);
  const double f0 = incumbent_value ? sanitize(*incumbent_value) : sanitize(f(incumbent));
  if (!incumbent_value) ++out.evaluations;
  Best best{incumbent, f0};
  if (!(hi - lo > 1e-14)) {
    out.eta = incumbent;
    out.value = f0;
    return out;
  }

  double a = lo, b = hi, x = incumbent, fx = f0;
  if (cfg.grid_points >= 2) {
    const std::size_t g = cfg.grid_points;
    const double step = (hi - lo) / static_cast<double>(g - 1);
    std::size_t arg = 0;
    double top = kNegInf;
    for (std::size_t k = 0; k < g; ++k) {
      const double eta = k + 1 == g ? hi : lo + step * static_cast<double>(k);
      const double v = sanitize(f(eta));
      ++out.evaluations;
      best.offer(eta, v);
      if (v > top) {
        top = v;
        arg = k;
      }
    }
    if (best.value > top) {
      // The incumbent beats every sample; refine around it instead.
      const double pos = (incumbent - lo) / step;
      arg = static_cast<std::size_t>(std::clamp(std::floor(pos + 0.5), 0.0, static_cast<double>(g - 1)));
      x = incumbent;
      fx = f0;
    } else {
      x = arg + 1 == g ? hi : lo + step * static_cast<double>(arg);
      fx = top;
    }
    a = arg == 0 ? lo : lo + step * static_cast<double>(arg - 1);
    b = arg + 1 >= g ? hi : (arg + 2 == g ? hi : lo + step * static_cast<double>(arg + 1));
  } else {
    // Expanding-step bracket from the incumbent.
    const double span = hi - lo;
    double s = 0.01 * span;
    double p = incumbent, fp = f0;
    double q = std::min(hi, p + s);
    if (q == p) q = std::max(lo, p - s);
    double fq = sanitize(f(q));
    ++out.evaluations;
    best.offer(q, fq);
    if (fq < fp) {
      std::swap(p, q);
      std::swap(fp, fq);
    }
    double r = q;
    for (std::size_t it = 0; it < cfg.max_steps; ++it) {
      r = std::clamp(q + cfg.bracket_growth * (q - p), lo, hi);
      if (r == q) break;
      const double fr = sanitize(f(r));
      ++out.evaluations;
      best.offer(r, fr);
      if (fr <= fq) break;
      p = q; fp = fq;
      q = r; fq = fr;
    }
    a = std::min(p, r);
    b = std::max(p, r);
    x = q;
    fx = fq;
  }
  if (b > a) brent(f, a, b, std::clamp(x, a, b), fx, cfg, best, out.evaluations);
  out.eta = best.eta;
  out.value = best.value;
  return out;
}

namespace {

void trace_row(std::ostream* os, std::size_t restart, std::size_t iteration, std::span<const double> x, double v) {
  if (!os) return;
  *os << restart << ',' << iteration;
  for (const double xi : x) *os << ',' << xi;
  *os << ',' << v << '\n';
}

RestartLog run_one(const Objective& objective, const ParameterSpace& space, std::vector<double> x,
                   const PowellConfig& cfg, std::size_t restart_index) {
  const std::size_t dim = space.dimension();
  RestartLog log;
  space.project(x);
  log.start = x;
  double fx = sanitize(objective(x));
  log.start_objective = fx;
  trace_row(cfg.trace, restart_index, 0, x, fx);

  std::vector<std::vector<double>> dirs(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) dirs[i][i] = 1.0;

  std::vector<double> trial(dim);
  auto along = [&](const std::vector<double>& base, const std::vector<double>& d) {
    return [&, base_ptr = &base, d_ptr = &d](double eta) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = (*base_ptr)[i] + eta * (*d_ptr)[i];
      space.project(trial);
      return objective(trial);
    };
  };
  auto step = [&](const std::vector<double>& base, const std::vector<double>& d, double incumbent, double f_inc,
                  const std::vector<double>& incumbent_point) {
    const auto [lo, hi] = space.ray_interval(base, d);
    const auto res = line_maximize(along(base, d), lo, hi, cfg.line, incumbent, f_inc);
    ++log.line_searches;
    if (res.eta == incumbent) return std::pair{incumbent_point, f_inc};
    std::vector<double> next(dim);
    for (std::size_t i = 0; i < dim; ++i) next[i] = base[i] + res.eta * d[i];
    space.project(next);
    return std::pair{next, res.value};
  };

  for (std::size_t w = 1; w <= cfg.max_iterations; ++w) {
    log.iterations = w;
    const std::vector<double> x0 = x;
    for (std::size_t i = 0; i < dim; ++i) std::tie(x, fx) = step(x, dirs[i], 0.0, fx, x);
    if (dim == 1) {
      trace_row(cfg.trace, restart_index, w, x, fx);
      break;
    }
    std::vector<double> net(dim);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      net[i] = x[i] - x0[i];
      norm += net[i] * net[i];
    }
    std::rotate(dirs.begin(), dirs.begin() + 1, dirs.end());
    dirs.back() = net;
    if (norm > 0.0) {
      std::tie(x, fx) = step(x0, net, 1.0, fx, x);
    } else {
      ++log.line_searches;
    }
    trace_row(cfg.trace, restart_index, w, x, fx);
    double moved = 0.0;
    for (std::size_t i = 0; i < dim; ++i) moved += (x[i] - x0[i]) * (x[i] - x0[i]);
    if (std::sqrt(moved) <= cfg.epsilon) break;
  }
  log.end = x;
  log.objective = fx;
  return log;
}

}  // namespace

OptResult powell_maximize_from(const Objective& objective, const ParameterSpace& space,
                               const std::vector<std::vector<double>>& starts, const PowellConfig& cfg) {
  space.validate();
  if (starts.empty()) throw std::invalid_argument("powell_maximize: need at least one start");
  if (cfg.epsilon < 0.0) throw std::invalid_argument("powell_maximize: epsilon must be non-negative");
  OptResult out;
  out.best_objective = kNegInf;
  for (std::size_t r = 0; r < starts.size(); ++r) {
    if (!space.contains(starts[r])) throw std::invalid_argument("powell_maximize: start outside the feasible region");
    auto log = run_one(objective, space, starts[r], cfg, r);
    if (out.restarts.empty() || log.objective > out.best_objective) {
      out.best_objective = log.objective;
      out.best_point = log.end;
    }
    out.restarts.push_back(std::move(log));
  }
  return out;
}

OptResult powell_maximize(const Objective& objective, const ParameterSpace& space, const PowellConfig& cfg) {
  space.validate();
  if (cfg.restarts < 1) throw std::invalid_argument("powell_maximize: restarts must be at least 1");
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> starts;
  starts.reserve(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) starts.push_back(space.sample(rng));
  return powell_maximize_from(objective, space, starts, cfg);
}

}  // namespace cfl
