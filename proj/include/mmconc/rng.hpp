#pragma once

#include <cstdint>
#include <random>

namespace mmconc::rng {

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t z);

/// Seed for substream `stream` of master seed `seed`. Substreams are what
/// make batch generation order-independent: every work item owns its own
/// engine, so results do not depend on scheduling.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

/// Deterministic sampling engine. The generator is std::mt19937_64 (its
/// output sequence is fixed by the standard); the variate transforms are
/// implemented here rather than taken from <random> because the standard
/// leaves distribution algorithms implementation-defined, and sample sets
/// must be reproducible bit-for-bit from their recorded seed.
class Engine {
public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}
  Engine(std::uint64_t seed, std::uint64_t stream) : gen_(derive_stream(seed, stream)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();
  /// Uniform on (0, 1).
  double uniform_open01();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] via rejection (unbiased).
  int uniform_int(int lo, int hi);
  /// Fair ±1.
  double sign();
  /// Standard normal (Marsaglia polar, second variate cached).
  double normal();
  /// Gamma(shape, scale 1), shape > 0 (Marsaglia-Tsang; boosted for shape < 1).
  double gamma(double shape);

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace mmconc::rng
