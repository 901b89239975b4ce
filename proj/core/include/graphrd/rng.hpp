#pragma once

#include <cstdint>
#include <random>

namespace graphrd {

/// Seeded random stream. Streams are addressed by (seed, stream) so replica r
/// of a sweep draws from `Rng(seed, r)` regardless of which worker runs it.
/// The engine is mt19937_64 seeded through a splitmix64 mix of both keys;
/// uniform doubles use the top 53 bits so output is identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_left() { return 1.0 - uniform(); }
  /// Exponential waiting time with the given rate (> 0).
  double exponential(double rate);
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace graphrd
