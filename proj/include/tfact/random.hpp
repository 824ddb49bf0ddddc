#ifndef TFACT_RANDOM_HPP
#define TFACT_RANDOM_HPP

#include <cstdint>

namespace tfact {

// SplitMix64: output k of the stream with seed s is mix(s + (k+1) * gamma).
// Counter-based, so a stream can be split by deriving a new seed with split().
// Every random choice in the library flows through this type; bounded draws use
// rejection so results are identical on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  /// Independent child stream; advances this stream by one step.
  SplitMix64 split() { return SplitMix64(mix(next() ^ 0x6a09e667f3bcc909ULL)); }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace tfact

#endif  // TFACT_RANDOM_HPP
