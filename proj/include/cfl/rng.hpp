#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cfl {

// One step of the splitmix64 sequence; used to expand a master seed into
// independent per-repetition / per-fold seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic child seed for the given path below a master seed, e.g.
// derive_seed(master, {rep, fold}). Equal paths give equal seeds.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Seeded generator with platform-independent variate conversions (the
// standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cfl
