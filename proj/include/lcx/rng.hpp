#ifndef LCX_RNG_HPP
#define LCX_RNG_HPP

#include <cstdint>

namespace lcx {

// Counter-based generator: output i of stream s under seed k is a pure
// function hash(k, s, i). Splitting by instance index gives independent,
// reproducible streams regardless of how many draws each instance makes.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    std::uint64_t z = mix(seed_ + 0x9e3779b97f4a7c15ULL);
    z = mix(z ^ mix(stream_ + 0xbf58476d1ce4e5b9ULL));
    return mix(z ^ counter_++);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Independent stream for instance `index`; the parent state is untouched.
  CounterRng split(std::uint64_t index) const {
    return CounterRng(seed_, mix(stream_ ^ mix(index + 0x94d049bb133111ebULL)));
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace lcx

#endif
