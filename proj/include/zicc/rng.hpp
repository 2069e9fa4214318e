#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace zicc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream derivation rule used everywhere a run forks into substreams
// (replications, per-model chains): mix the master seed with a salted
// stream index. Results depend only on (master, stream), never on
// scheduling order or thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x123456789abcdefULL));
}

// mt19937_64 with uniform doubles built from the raw bits, so draws are
// identical across standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1) with 53 random bits
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  double exponential(double rate) {
    double u;
    do {
      u = u01();
    } while (u <= 0.0);
    return -std::log(u) / rate;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace zicc
