#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace jetlab {

// splitmix64: tiny, fully specified generator so seeded runs are
// bit-identical across platforms (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Uniform on the disc of radius r (area measure).
  std::complex<double> disc(double r) {
    double rho = r * std::sqrt(uniform());
    double phi = 2.0 * M_PI * uniform();
    return std::polar(rho, phi);
  }

  // Uniform angle, modulus uniform in [lo, hi].
  std::complex<double> annulus(double lo, double hi) {
    return std::polar(uniform(lo, hi), 2.0 * M_PI * uniform());
  }

 private:
  std::uint64_t state_;
};

}  // namespace jetlab
