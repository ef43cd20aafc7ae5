#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// They use plain nested vectors and natural logarithms so that they share no
// code path with the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Counts = std::vector<std::vector<long long>>;

// I(T;Y) / H(T) from an m x (m+1) count table, term by term in joint
// probabilities. The last column (rejects) enters n and the row totals only.
inline double ni(const Counts& c) {
  const std::size_t m = c.size();
  double n = 0.0;
  std::vector<double> rows(m, 0.0), cols(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      n += static_cast<double>(c[i][j]);
      rows[i] += static_cast<double>(c[i][j]);
      if (j < m) cols[j] += static_cast<double>(c[i][j]);
    }
  }
  double info = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double pij = static_cast<double>(c[i][j]) / n;
      if (pij == 0.0) continue;
      const double pi = rows[i] / n;
      const double pj = cols[j] / n;
      info += pij * std::log(pij / (pi * pj));
    }
  }
  double h = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double pi = rows[i] / n;
    if (pi > 0.0) h -= pi * std::log(pi);
  }
  return info / h;
}

inline double gaussian(double x, double mu, double h) {
  return std::exp(-(x - mu) * (x - mu) / (2.0 * h * h)) / (h * std::sqrt(2.0 * M_PI));
}

// Random count table with every row total at least one and at least two classes.
inline Counts random_counts(std::mt19937_64& gen, std::size_t m, int max_entry) {
  std::uniform_int_distribution<int> d(0, max_entry);
  Counts c(m, std::vector<long long>(m + 1));
  for (auto& row : c) {
    long long total = 0;
    do {
      total = 0;
      for (auto& v : row) total += (v = d(gen));
    } while (total == 0);
  }
  return c;
}

}  // namespace oracle
