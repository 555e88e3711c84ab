#ifndef CAFF_RNG_HPP
#define CAFF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace caff {

// mt19937_64 with hand-rolled variate mappings, so seeded streams are
// reproducible across standard libraries (the std distributions are
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {  // [0, 1), 53 bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double gaussian() {  // Box-Muller
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace caff

#endif  // CAFF_RNG_HPP
