#pragma once

#include <cmath>
#include <cstdint>

namespace conic {

// Fixed default seed for reproducibility-by-default; never time-based.
inline constexpr std::uint64_t kDefaultSeed = 42;

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64 stream; used for state expansion.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ (Blackman/Vigna), state expanded from splitmix64.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform double in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Independent per-trial generator: the run seed and the trial index are
// combined through mix64, so trial i's randomness depends only on
// (seed, i) and not on worker scheduling.
inline Xoshiro256pp trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return Xoshiro256pp(mix64(seed) ^ mix64(trial ^ 0xD1B54A32D192ED03ULL));
}

// Standard normal deviates by the Marsaglia polar method.
class GaussianSampler {
 public:
  explicit GaussianSampler(Xoshiro256pp& rng) : rng_(rng) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * rng_.unit() - 1.0;
      v = 2.0 * rng_.unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  Xoshiro256pp& rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conic
