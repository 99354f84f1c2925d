#pragma once

#include <cstdint>
#include <random>

namespace te {

/// Independent random stream for one realisation of an ensemble, keyed by
/// (seed, stream index). Draws are derived from raw 64-bit engine output so
/// sequences are identical across standard libraries.
class StreamRng {
public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Standard normal (Marsaglia polar method).
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

} // namespace te
