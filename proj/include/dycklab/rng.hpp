#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dycklab {

// SplitMix64 finalizer (Steele, Lea & Flood). Used only to derive child
// stream seeds from (seed, index) so that corpora and trials are reproducible
// independently of draw order.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
  return splitmix64(seed + index * 0x9E3779B97F4A7C15ull);
}

// mt19937_64 with hand-rolled distributions. The std:: distributions are not
// bit-portable across standard libraries; these are, so identical seeds give
// identical corpora everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n) without modulo bias (reject the low sliver).
  uint64_t next_below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t min = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t v = engine_();
      if (v >= min) return v % n;
    }
  }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dycklab
