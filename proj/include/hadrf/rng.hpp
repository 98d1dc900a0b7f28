#pragma once

#include <cmath>
#include <cstdint>

namespace hadrf {

// SplitMix64 step; also used as a stateless mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Substream key for one (sample, component) pair: generation is independent
// of scheduling order, so campaigns can run samples in parallel and still
// reproduce bit for bit.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t sample,
                                 std::uint64_t component) {
  std::uint64_t h = mix64(master ^ 0x8BADF00D5Ull);
  h = mix64(h ^ (0x9E3779B97F4A7C15ull * (sample + 1)));
  h = mix64(h ^ (0xC2B2AE3D27D4EB4Full * (component + 1)));
  return h;
}

// Deterministic standard normal stream (SplitMix64 uniforms, Box-Muller).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586477 * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  double uniform_open() {
    // (0, 1]: keeps the log argument away from zero.
    return (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hadrf
