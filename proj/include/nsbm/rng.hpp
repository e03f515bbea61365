#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nsbm {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derived stream seed for replicate/restart `index`. Pure function of
/// (master, index), so parallel workers never share generator state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0xd1342543de82ef95ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// mt19937_64 wrapper producing doubles via fixed bit manipulation, so
/// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) {
    int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cache_ = r * std::sin(a);
    has_cache_ = true;
    return r * std::cos(a);
  }

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = uniform_int(i + 1);
      std::swap(perm[i], perm[j]);
    }
    return perm;
  }

 private:
  std::mt19937_64 gen_;
  bool has_cache_ = false;
  double cache_ = 0.0;
};

}  // namespace nsbm
