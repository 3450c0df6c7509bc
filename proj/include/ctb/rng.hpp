#pragma once

#include <cstdint>
#include <cmath>

namespace ctb {

// Counter-based generator: the k-th output is a pure function of (seed, k),
// so streams can be split and replayed deterministically on one platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // uniform in (0, 1)
  double uniform_at(std::uint64_t counter) const {
    const std::uint64_t bits = splitmix64(seed_ ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return (double(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  // sequential interface
  double uniform() { return uniform_at(next_++); }

  double normal() {
    // Box-Muller; one value per pair of uniforms, second discarded.
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

}  // namespace ctb
