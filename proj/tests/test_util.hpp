#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "cfcert/ball.hpp"
#include "cfcert/dyadic.hpp"

// Deterministic RNG for reproducible tests (splitmix64).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform-ish in [0, n); bias is irrelevant for tests.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  // Random rational with numerator/denominator up to `mag`.
  mpq_class rational(long mag) {
    mpq_class q(range(-mag, mag), range(1, mag));
    q.canonicalize();
    return q;
  }
};

// Interval of width ~2^-480 certainly containing v (directed rounding).
struct TightLog2 {
  cfcert::Dyadic lo, hi;
};

inline bool overlaps(const cfcert::RealBall& b, const cfcert::Dyadic& lo,
                     const cfcert::Dyadic& hi) {
  return !(b.upper() < lo || hi < b.lower());
}
