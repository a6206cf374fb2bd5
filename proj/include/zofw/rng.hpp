#ifndef ZOFW_RNG_HPP
#define ZOFW_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace zofw {

/// Deterministic random stream. All randomness in the library flows through
/// instances of this class; there is no global generator. The same seed
/// always reproduces the same stream bit for bit, and independent child
/// streams are derived with split() rather than by sharing one instance.
///
/// The uniform/normal/index helpers are implemented by hand on top of the
/// raw 64-bit output so that streams do not depend on standard-library
/// distribution internals.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; generates pairs and caches the spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  /// Uniform integer in [0, n). Unbiased (rejects the short tail of the
  /// 64-bit range), n must be positive.
  std::int64_t uniform_index(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_index: n must be > 0");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0ULL - un) % un;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return static_cast<std::int64_t>(r % un);
    }
  }

  /// Derive an independent child stream. Children are keyed by the parent
  /// seed and a running counter, so repeated splits of the same parent give
  /// distinct but reproducible streams.
  SeededRng split() {
    std::uint64_t key = seed_ + 0x9e3779b97f4a7c15ULL * (++split_count_);
    return SeededRng(mix64(key));
  }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t split_count_ = 0;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace zofw

#endif  // ZOFW_RNG_HPP
