#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded, bit-reproducible random streams. Draws are built directly from
// mt19937_64 output bits; the standard distributions are not used because
// their sequences are implementation-defined.

namespace fovex::rng {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Fixed splitting rule (master, stage, sample) -> stream seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stage, std::uint64_t sample) {
  return mix64(mix64(master ^ 0x6a09e667f3bcc909ull * (stage + 1)) ^
               0xbb67ae8584caa73bull * (sample + 1));
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + int(eng_() % std::uint64_t(hi - lo + 1));
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fovex::rng
