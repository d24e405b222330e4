#pragma once

#include <cstdint>

namespace pursuit {

// Deterministic 64-bit generator built on the splitmix64 sequence.
//
// Substreams keyed on (seed, stream) start at double-mixed positions of the
// underlying sequence, so per-trial streams can be handed to parallel workers
// and replayed in any order with identical results.
class rng64 {
public:
  using result_type = std::uint64_t;

  explicit rng64(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

  static rng64 substream(std::uint64_t seed, std::uint64_t stream) {
    rng64 r(seed);
    r.state_ = mix(r.state_ ^ mix(stream + 0x632be59bd9b4e019ull));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform on [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t reject_below = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= reject_below) return r % bound;
    }
  }

  bool next_coin() { return (next_u64() >> 63) != 0; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t state_;
};

}  // namespace pursuit
