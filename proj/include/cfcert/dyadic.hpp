#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "cfcert/errors.hpp"

namespace cfcert {

namespace detail {
// Widen the MPFR exponent range once so intermediate magnitudes like
// 2^(+-10^5) never flush to zero or infinity behind our backs.
inline void ensure_exponent_range() {
  static const bool done = [] {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    return true;
  }();
  (void)done;
}
}  // namespace detail

/// Arbitrary-precision dyadic rational m * 2^e, stored as an MPFR float.
/// All rounding is explicit: every inexact operation takes a precision and a
/// rounding mode.  Negation, absolute value and scaling by powers of two are
/// exact at the operand's precision.
class Dyadic {
 public:
  explicit Dyadic(mpfr_prec_t prec = 64) {
    detail::ensure_exponent_range();
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }

  Dyadic(const Dyadic& o) {
    detail::ensure_exponent_range();
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }

  Dyadic(Dyadic&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  Dyadic& operator=(const Dyadic& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Dyadic& operator=(Dyadic&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Dyadic() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }

  /// Exponent e with 2^(e-1) <= |x| < 2^e; only valid for nonzero values.
  mpfr_exp_t exponent() const { return mpfr_get_exp(v_); }

  // --- constructors from exact values -------------------------------------

  static Dyadic from_long(long n) {
    Dyadic d(64);
    mpfr_set_si(d.v_, n, MPFR_RNDN);
    return d;
  }

  static Dyadic from_mpz(const mpz_class& z) {
    size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    Dyadic d(std::max<mpfr_prec_t>(64, static_cast<mpfr_prec_t>(bits)));
    mpfr_set_z(d.v_, z.get_mpz_t(), MPFR_RNDN);  // exact at this precision
    return d;
  }

  static Dyadic from_double(double x) {
    Dyadic d(64);
    mpfr_set_d(d.v_, x, MPFR_RNDN);  // exact: 53 <= 64 bits
    return d;
  }

  static Dyadic from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Dyadic d(prec);
    mpfr_set_q(d.v_, q.get_mpq_t(), rnd);
    return d;
  }

  /// 2^e, exact.
  static Dyadic pow2(mpfr_exp_t e) {
    Dyadic d(8);
    mpfr_set_ui_2exp(d.v_, 1, e, MPFR_RNDN);
    return d;
  }

  // --- exact operations ----------------------------------------------------

  Dyadic neg() const {
    Dyadic r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Dyadic abs() const {
    Dyadic r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Dyadic mul_2si(long e) const {
    Dyadic r(prec());
    mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
    return r;
  }

  /// Exact conversion to mantissa * 2^exp.  Requires a finite value.
  std::pair<mpz_class, mpfr_exp_t> to_mpz_2exp() const {
    mpz_class m;
    if (is_zero()) return {m, 0};
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    return {m, e};
  }

  /// Exact rational value.
  mpq_class to_mpq() const {
    auto [m, e] = to_mpz_2exp();
    mpq_class q(m);
    if (e >= 0) {
      mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(),
                   static_cast<mp_bitcnt_t>(e));
    } else {
      mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(),
                   static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // --- rounded arithmetic ----------------------------------------------------

  static Dyadic add(const Dyadic& a, const Dyadic& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_add(d.v_, a.v_, b.v_, r);
    return d;
  }
  static Dyadic sub(const Dyadic& a, const Dyadic& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_sub(d.v_, a.v_, b.v_, r);
    return d;
  }
  static Dyadic mul(const Dyadic& a, const Dyadic& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_mul(d.v_, a.v_, b.v_, r);
    return d;
  }
  static Dyadic div(const Dyadic& a, const Dyadic& b, mpfr_prec_t p, mpfr_rnd_t r) {
    if (b.is_zero()) throw ZeroInput("division by zero dyadic");
    Dyadic d(p);
    mpfr_div(d.v_, a.v_, b.v_, r);
    return d;
  }
  static Dyadic sqrt(const Dyadic& a, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_sqrt(d.v_, a.v_, r);
    return d;
  }
  static Dyadic hypot(const Dyadic& a, const Dyadic& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_hypot(d.v_, a.v_, b.v_, r);
    return d;
  }
  static Dyadic log2(const Dyadic& a, mpfr_prec_t p, mpfr_rnd_t r) {
    if (a.sgn() <= 0) throw ZeroInput("log2 of nonpositive dyadic");
    Dyadic d(p);
    mpfr_log2(d.v_, a.v_, r);
    return d;
  }
  static Dyadic log(const Dyadic& a, mpfr_prec_t p, mpfr_rnd_t r) {
    if (a.sgn() <= 0) throw ZeroInput("log of nonpositive dyadic");
    Dyadic d(p);
    mpfr_log(d.v_, a.v_, r);
    return d;
  }
  static Dyadic exp2(const Dyadic& a, mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_exp2(d.v_, a.v_, r);
    return d;
  }
  static Dyadic fma(const Dyadic& a, const Dyadic& b, const Dyadic& c,
                    mpfr_prec_t p, mpfr_rnd_t r) {
    Dyadic d(p);
    mpfr_fma(d.v_, a.v_, b.v_, c.v_, r);
    return d;
  }

  // --- exact comparisons -----------------------------------------------------

  friend bool operator<(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  static const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }
  static const Dyadic& min(const Dyadic& a, const Dyadic& b) { return a < b ? a : b; }

  /// Decimal rendering with explicit digit count (round to nearest).
  std::string to_string(size_t digits = 0) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sgn() > 0 ? "inf" : "-inf");
    if (digits == 0)
      digits = static_cast<size_t>(static_cast<double>(prec()) * 0.30103) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool negative = !mant.empty() && mant[0] == '-';
    std::string body = negative ? mant.substr(1) : mant;
    // mant is digits with implied decimal point before the first digit.
    std::string out = (negative ? "-" : "");
    out += "0.";
    out += body;
    out += "e";
    out += std::to_string(static_cast<long>(e));
    return out;
  }

 private:
  mpfr_t v_;
};

}  // namespace cfcert
