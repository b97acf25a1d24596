#pragma once

#include <cstdlib>
#include <mpfr.h>

namespace cfcert {

/// Hard ceiling for adaptive precision escalation, in bits.  Overridable at
/// runtime through the CFCERT_MAX_PREC environment variable.
inline mpfr_prec_t max_precision() {
  static const mpfr_prec_t cap = [] {
    if (const char* s = std::getenv("CFCERT_MAX_PREC")) {
      long v = std::strtol(s, nullptr, 10);
      if (v >= 64) return static_cast<mpfr_prec_t>(v);
    }
    return static_cast<mpfr_prec_t>(8192);
  }();
  return cap;
}

/// Default cap on deg(a)*deg(b) for exact minimal-polynomial combination.
inline constexpr unsigned kDefaultExactDegreeCap = 64;

/// Node budget for the conjugate-closed factor search.
inline constexpr unsigned long long kFactorSearchBudget = 8'000'000;

/// Iteration budget for threshold searches.
inline constexpr long kThresholdSearchBudget = 1'000'000;

}  // namespace cfcert
