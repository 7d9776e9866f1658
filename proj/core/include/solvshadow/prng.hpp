#ifndef SOLVSHADOW_PRNG_HPP
#define SOLVSHADOW_PRNG_HPP

#include <cstdint>

namespace solvshadow {

/// SplitMix64.  Used everywhere randomness is needed so that seeded runs are
/// bit-identical across platforms and standard-library versions.
class Prng {
public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
  std::uint64_t state_;
};

} // namespace solvshadow

#endif
