#pragma once

#include <cstdint>
#include <random>

namespace isac {

// splitmix64 step; used to derive well-separated per-trial seeds so that a
// fixed (master seed, trial index) pair gives the same stream regardless of
// how trials are scheduled across workers.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t s = master_seed ^ (0xd1b54a32d192ed03ULL * (trial_index + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return Rng(a ^ (b << 1));
  }

  std::uint64_t next_u64() { return gen_(); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  double exponential(double mean) {
    return std::exponential_distribution<double>(1.0 / mean)(gen_);
  }

  // Unit-mean Gamma power gain of a Nakagami-m envelope.
  double nakagami_power(int shape_m) {
    return std::gamma_distribution<double>(static_cast<double>(shape_m),
                                           1.0 / shape_m)(gen_);
  }

  double weibull(double shape_k, double scale) {
    return std::weibull_distribution<double>(shape_k, scale)(gen_);
  }

  long poisson(double mean) {
    return std::poisson_distribution<long>(mean)(gen_);
  }

  struct UnitVec {
    double x, y;
  };

  // Uniform direction on the circle via rejection from the square; avoids a
  // sincos pair per draw in the hot simulation loop.
  UnitVec unit_vector() {
    for (;;) {
      double x = uniform(-1.0, 1.0);
      double y = uniform(-1.0, 1.0);
      double r2 = x * x + y * y;
      if (r2 > 1e-12 && r2 <= 1.0) {
        double inv = 1.0 / std::sqrt(r2);
        return {x * inv, y * inv};
      }
    }
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace isac
