#pragma once

#include <array>
#include <cstdint>

#include "qcliff/forms.hpp"
#include "qcliff/multivector.hpp"
#include "qcliff/scalars.hpp"

namespace qcliff {

// SplitMix64: tiny, well-mixed, platform-independent generator. Each sample
// of a scan derives its own stream from (seed, index), so results do not
// depend on thread scheduling.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-width, width).
  double next_symmetric(double width) { return (2.0 * next_unit() - 1.0) * width; }

  // Uniform integer in [lo, hi].
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xA0761D6478BD642Full + index * 0xE7037ED1A0B428DBull));
  return mix.next();
}

// Random small rational, numerator in [-9, 9], denominator in [1, 9].
inline mpq_class random_rational(SplitMix64& rng) {
  mpq_class q(rng.next_int(-9, 9), rng.next_int(1, 9));
  q.canonicalize();
  return q;
}

template <class S>
S random_scalar(SplitMix64& rng) {
  using traits = scalar_traits<S>;
  if constexpr (traits::exact) {
    return traits::make(random_rational(rng), random_rational(rng));
  } else {
    return traits::make(rng.next_symmetric(1.0), rng.next_symmetric(1.0));
  }
}

template <class S>
Multivector<S> random_multivector(SplitMix64& rng) {
  Multivector<S> r;
  for (unsigned m = 0; m < kBladeCount; ++m) r[m] = random_scalar<S>(rng);
  return r;
}

template <class S>
Multivector<S> random_vector(SplitMix64& rng) {
  Multivector<S> r;
  for (int mu = 0; mu < 4; ++mu) r[1u << mu] = random_scalar<S>(rng);
  return r;
}

template <class S>
std::array<S, 4> random_column(SplitMix64& rng) {
  return {random_scalar<S>(rng), random_scalar<S>(rng), random_scalar<S>(rng),
          random_scalar<S>(rng)};
}

// Random antisymmetric form with entries uniform in [-magnitude, magnitude]
// (float backend) or small rationals scaled by magnitude (exact backend).
template <class R>
BilinearForm<R> random_antisymmetric(SplitMix64& rng, double magnitude) {
  BilinearForm<R> f;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      R v;
      if constexpr (std::is_same_v<R, mpq_class>) {
        long denom = static_cast<long>(2.0 / (magnitude > 0 ? magnitude : 1.0)) + 1;
        mpq_class q(rng.next_int(-9, 9), 9 * denom);
        q.canonicalize();
        v = q;
      } else {
        v = rng.next_symmetric(magnitude);
      }
      f.at(mu, nu) = v;
      f.at(nu, mu) = -v;
    }
  return f;
}

}  // namespace qcliff
