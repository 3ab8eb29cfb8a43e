#ifndef WAVELOS_RNG_HPP
#define WAVELOS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace wavelos::rng {

// splitmix64 (Steele/Lea/Flood). Chosen over std:: engines because its
// output is fully specified, so realizations are bit-identical across
// standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Rayleigh draw with scale sigma, via inverse CDF. Uses 1-u so the
  /// log argument lies in (0, 1].
  double rayleigh(double sigma) {
    const double u = 1.0 - uniform01();
    return sigma * std::sqrt(-2.0 * std::log(u));
  }

 private:
  std::uint64_t state_;
};

/// Seed for the index-th independent stream under a master seed. Streams
/// only depend on (master, index), never on the order realizations run in.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t stream_index) {
  SplitMix64 h(master_seed);
  const std::uint64_t base = h.next();
  return SplitMix64(base ^ (stream_index * 0xda942042e4dd58b5ULL)).next();
}

}  // namespace wavelos::rng

#endif  // WAVELOS_RNG_HPP
