#pragma once

// Seeded uniform deviates with a pinned bit mapping. Reports must be
// byte-reproducible across platforms, so std::uniform_real_distribution
// (implementation-defined) is deliberately avoided: every draw is
// (mt19937_64 output >> 11) * 2^-53, giving a double in [0, 1).

#include <concepts>
#include <cstdint>
#include <random>

#include "dhmu/types.hpp"

namespace dhmu {

template <std::floating_point Scalar>
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : rng_(seed) {}

  /// uniform in [0, 1)
  Scalar next01() {
    return Scalar(static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  /// uniform in [-1, 1)
  Scalar next_symmetric() { return Scalar(2) * next01() - Scalar(1); }

  Vector<Scalar> vector01(Index n) {
    Vector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v[i] = next01();
    return v;
  }

  Vector<Scalar> vector_symmetric(Index n) {
    Vector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v[i] = next_symmetric();
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dhmu
