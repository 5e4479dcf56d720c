#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace gsd {

// Derives the seed of an independent substream. Replicated work (bootstrap
// replicates, simulation cells) seeds its own Rng from (seed, stream index),
// so results do not depend on execution order or parallelism degree.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

// Seeded generator wrapping std::mt19937_64. All variate transforms are
// implemented here instead of via <random> distributions, whose output is
// implementation-defined; this keeps sequences identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  // Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  double normal();
  // Unit-scale gamma variate, shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);
  double beta(double a, double b);

  // Index of the first entry of `cdf` that is >= u for a fresh uniform u.
  // `cdf` must be nondecreasing with back() == 1 (within rounding).
  int categorical(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace gsd
