#pragma once

#include <cstdint>
#include <random>

namespace lmmse {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

// Stream layout for campaigns: replication r of experiment e lives at e * 2^32 + r.
constexpr std::uint64_t kStreamsPerExperiment = std::uint64_t{1} << 32;

constexpr SeedSpec replication_seed(std::uint64_t master, std::uint64_t experiment,
                                    std::uint64_t replication) {
  return {master, experiment * kStreamsPerExperiment + replication};
}

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(const SeedSpec& seed) {
  return mix64(mix64(seed.master_seed) ^ mix64(seed.stream_index + 0x632be59bd9b4e019ULL));
}

/// Portable random source. The engine output sequence is fixed by the C++
/// standard; the variate transforms below are written out so that streams do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(const SeedSpec& seed) : engine_(stream_seed(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Uniform integer in [0, bound), rejection sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lmmse
