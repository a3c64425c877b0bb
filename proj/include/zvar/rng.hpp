#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace zvar {

/// Seed for one Monte Carlo trial: (master_seed, stream_id) fully
/// determines every variate drawn in the trial.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Counter-based generator keyed on (master_seed, stream_id, lane).
/// Each output is a pure function of (key, counter), so draws are
/// reproducible independent of execution order and thread count.
/// The lane separates sub-streams within one trial (system components,
/// re-draws after a rejected trial).
class CounterRng {
 public:
  CounterRng(SeedSpec seed, std::uint64_t lane = 0)
      : key_(derive_key(seed.master_seed, seed.stream_id, lane)) {}

  /// Uniform in the open interval (0, 1).
  double uniform() { return to_unit(word(counter_++)); }

  /// Standard complex Gaussian: mean 0, E|c|^2 = 1 (Re and Im are
  /// independent N(0, 1/2)).  Polar Box-Muller, two counter words.
  std::complex<double> complex_normal() {
    const double u = to_unit(word(counter_++));
    const double v = to_unit(word(counter_++));
    const double amp = std::sqrt(-std::log(u));
    return {amp * std::cos(2.0 * M_PI * v), amp * std::sin(2.0 * M_PI * v)};
  }

  std::uint64_t next_word() { return word(counter_++); }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream, std::uint64_t lane) {
    std::uint64_t k = mix64(master + 0x9E3779B97F4A7C15ull);
    k = mix64(k ^ (stream + 0xD1B54A32D192ED03ull));
    k = mix64(k ^ (lane + 0x8CB92BA72F3D8DD7ull));
    return k;
  }

  std::uint64_t word(std::uint64_t counter) const {
    return mix64(key_ + counter * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull);
  }

  static double to_unit(std::uint64_t w) {
    // 53-bit mantissa, shifted into (0,1) so log() is always finite.
    return (double(w >> 11) + 0.5) * 0x1p-53;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace zvar
