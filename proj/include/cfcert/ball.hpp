#pragma once

#include <vector>

#include "cfcert/dyadic.hpp"
#include "cfcert/errors.hpp"

namespace cfcert {

/// Precision used for radii.  Radii are always rounded up, so a handful of
/// bits is enough; what matters is that they never shrink by rounding.
inline constexpr mpfr_prec_t kRadPrec = 30;

namespace detail {

/// Upper bound for the rounding error of an MPFR operation that produced
/// `result` with ternary value `t` at the result's own precision.
inline Dyadic rnd_error(const Dyadic& result, int t) {
  if (t == 0) return Dyadic(8);  // exact
  if (result.is_zero() || !result.is_finite())
    throw PrecisionExhausted("rounding error bound unavailable (under/overflow)");
  return Dyadic::pow2(result.exponent() - result.prec());
}

inline Dyadic rad_add(const Dyadic& a, const Dyadic& b) {
  return Dyadic::add(a, b, kRadPrec, MPFR_RNDU);
}
inline Dyadic rad_mul(const Dyadic& a, const Dyadic& b) {
  return Dyadic::mul(a, b, kRadPrec, MPFR_RNDU);
}
inline Dyadic rad_up(const Dyadic& a) {
  Dyadic r(kRadPrec);
  mpfr_set(r.raw(), a.raw(), MPFR_RNDU);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// RealBall: interval [mid - rad, mid + rad]
// ---------------------------------------------------------------------------

struct RealBall {
  Dyadic mid;
  Dyadic rad;  // nonnegative, kRadPrec bits

  RealBall() : mid(64), rad(kRadPrec) {}
  RealBall(Dyadic m, Dyadic r) : mid(std::move(m)), rad(std::move(r)) {}

  static RealBall exact(Dyadic m) { return {std::move(m), Dyadic(kRadPrec)}; }
  static RealBall exact_long(long n) { return exact(Dyadic::from_long(n)); }
  static RealBall exact_mpz(const mpz_class& z) { return exact(Dyadic::from_mpz(z)); }

  static RealBall from_mpq(const mpq_class& q, mpfr_prec_t p) {
    Dyadic lo = Dyadic::from_mpq(q, p, MPFR_RNDD);
    Dyadic hi = Dyadic::from_mpq(q, p, MPFR_RNDU);
    return from_endpoints(lo, hi, p);
  }

  /// Smallest ball (up to rounding) containing [lo, hi]; requires lo <= hi.
  static RealBall from_endpoints(const Dyadic& lo, const Dyadic& hi, mpfr_prec_t p) {
    Dyadic two = Dyadic::from_long(2);
    Dyadic m = Dyadic::div(Dyadic::add(lo, hi, p + 4, MPFR_RNDN), two, p, MPFR_RNDN);
    Dyadic r1 = Dyadic::sub(m, lo, kRadPrec, MPFR_RNDU);
    Dyadic r2 = Dyadic::sub(hi, m, kRadPrec, MPFR_RNDU);
    return {m, Dyadic::max(r1, r2)};
  }

  bool is_exact() const { return rad.is_zero(); }

  Dyadic lower() const { return Dyadic::sub(mid, rad, mid.prec() + 8, MPFR_RNDD); }
  Dyadic upper() const { return Dyadic::add(mid, rad, mid.prec() + 8, MPFR_RNDU); }

  /// Width upper bound (2*rad).
  Dyadic width() const { return rad.mul_2si(1); }

  bool contains_zero() const { return mid.abs() <= rad; }
  bool is_positive() const { return lower().sgn() > 0; }
  bool is_negative() const { return upper().sgn() < 0; }

  /// Exact containment test via rational arithmetic.
  bool contains(const mpq_class& x) const {
    mpq_class d = x - mid.to_mpq();
    mpq_class r = rad.to_mpq();
    return ::abs(d) <= r;
  }
  bool contains_dyadic(const Dyadic& x) const { return contains(x.to_mpq()); }

  /// Does the ball contain some integer?  (Exact.)
  bool contains_integer() const {
    mpq_class lo = mid.to_mpq() - rad.to_mpq();
    mpq_class hi = mid.to_mpq() + rad.to_mpq();
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    return mpq_class(c) <= hi;
  }

  /// The unique integer in the ball, if there is exactly one.
  bool unique_integer(mpz_class& out) const {
    mpq_class lo = mid.to_mpq() - rad.to_mpq();
    mpq_class hi = mid.to_mpq() + rad.to_mpq();
    mpz_class c, f;
    mpz_cdiv_q(c.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(f.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (c != f || mpq_class(c) > hi) return false;
    out = c;
    return true;
  }
};

inline RealBall add(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  Dyadic m(p);
  int t = mpfr_add(m.raw(), a.mid.raw(), b.mid.raw(), MPFR_RNDN);
  Dyadic r = detail::rad_add(detail::rad_add(a.rad, b.rad), detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

inline RealBall sub(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  Dyadic m(p);
  int t = mpfr_sub(m.raw(), a.mid.raw(), b.mid.raw(), MPFR_RNDN);
  Dyadic r = detail::rad_add(detail::rad_add(a.rad, b.rad), detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

inline RealBall neg(const RealBall& a) { return {a.mid.neg(), a.rad}; }

inline RealBall mul(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  Dyadic m(p);
  int t = mpfr_mul(m.raw(), a.mid.raw(), b.mid.raw(), MPFR_RNDN);
  Dyadic am = detail::rad_up(a.mid.abs());
  Dyadic bm = detail::rad_up(b.mid.abs());
  Dyadic r = detail::rad_mul(am, b.rad);
  r = detail::rad_add(r, detail::rad_mul(bm, a.rad));
  r = detail::rad_add(r, detail::rad_mul(a.rad, b.rad));
  r = detail::rad_add(r, detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

inline RealBall mul_mpz(const RealBall& a, const mpz_class& z, mpfr_prec_t p) {
  Dyadic m(p);
  int t = mpfr_mul_z(m.raw(), a.mid.raw(), z.get_mpz_t(), MPFR_RNDN);
  Dyadic zu = detail::rad_up(Dyadic::from_mpz(z).abs());
  Dyadic r = detail::rad_add(detail::rad_mul(zu, a.rad), detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

inline RealBall mul_pow2(const RealBall& a, long e) {
  return {a.mid.mul_2si(e), a.rad.mul_2si(e)};
}

inline RealBall div_ui(const RealBall& a, unsigned long n, mpfr_prec_t p) {
  Dyadic m(p);
  int t = mpfr_div_ui(m.raw(), a.mid.raw(), n, MPFR_RNDN);
  Dyadic r = Dyadic::div(a.rad, Dyadic::from_long(static_cast<long>(n)), kRadPrec, MPFR_RNDU);
  r = detail::rad_add(r, detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

/// Reciprocal of a ball certified away from zero.
inline RealBall inv(const RealBall& a, mpfr_prec_t p) {
  Dyadic lo = a.mid.abs();
  lo = Dyadic::sub(lo, a.rad, kRadPrec, MPFR_RNDD);
  if (lo.sgn() <= 0) throw ZeroInput("reciprocal of interval containing zero");
  Dyadic m(p);
  int t = mpfr_ui_div(m.raw(), 1, a.mid.raw(), MPFR_RNDN);
  // |1/x - 1/mid| <= rad / (lo * |mid|)
  Dyadic den = Dyadic::mul(lo, a.mid.abs(), kRadPrec, MPFR_RNDD);
  Dyadic r = Dyadic::div(a.rad, den, kRadPrec, MPFR_RNDU);
  r = detail::rad_add(r, detail::rnd_error(m, t));
  return {std::move(m), std::move(r)};
}

inline RealBall div(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  return mul(a, inv(b, p + 8), p);
}

inline RealBall abs(const RealBall& a) {
  if (a.mid.sgn() >= 0 && !a.contains_zero()) return a;
  if (a.mid.sgn() < 0 && !a.contains_zero()) return neg(a);
  // straddles zero: range is [0, max(|lo|, hi)]
  Dyadic hi = Dyadic::max(a.upper().abs(), a.lower().abs());
  return RealBall::from_endpoints(Dyadic(kRadPrec), hi, a.mid.prec());
}

/// log2 of a ball certified positive.
inline RealBall log2(const RealBall& a, mpfr_prec_t p) {
  Dyadic lo = a.lower(), hi = a.upper();
  if (lo.sgn() <= 0) throw ZeroInput("log2 of interval reaching zero");
  Dyadic l = Dyadic::log2(lo, p, MPFR_RNDD);
  Dyadic h = Dyadic::log2(hi, p, MPFR_RNDU);
  return RealBall::from_endpoints(l, h, p);
}

/// Natural log of a ball certified positive.
inline RealBall log(const RealBall& a, mpfr_prec_t p) {
  Dyadic lo = a.lower(), hi = a.upper();
  if (lo.sgn() <= 0) throw ZeroInput("log of interval reaching zero");
  Dyadic l = Dyadic::log(lo, p, MPFR_RNDD);
  Dyadic h = Dyadic::log(hi, p, MPFR_RNDU);
  return RealBall::from_endpoints(l, h, p);
}

inline RealBall exp2(const RealBall& a, mpfr_prec_t p) {
  Dyadic l = Dyadic::exp2(a.lower(), p, MPFR_RNDD);
  Dyadic h = Dyadic::exp2(a.upper(), p, MPFR_RNDU);
  return RealBall::from_endpoints(l, h, p);
}

inline RealBall sqrt(const RealBall& a, mpfr_prec_t p) {
  Dyadic lo = a.lower(), hi = a.upper();
  if (lo.sgn() < 0) throw ZeroInput("sqrt of interval reaching below zero");
  Dyadic l = Dyadic::sqrt(lo, p, MPFR_RNDD);
  Dyadic h = Dyadic::sqrt(hi, p, MPFR_RNDU);
  return RealBall::from_endpoints(l, h, p);
}

/// Smallest ball containing both inputs.
inline RealBall hull(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  Dyadic lo = Dyadic::min(a.lower(), b.lower());
  Dyadic hi = Dyadic::max(a.upper(), b.upper());
  return RealBall::from_endpoints(lo, hi, p);
}

inline bool overlap(const RealBall& a, const RealBall& b) {
  return !(a.upper() < b.lower() || b.upper() < a.lower());
}

// Certified order predicates.  `yes`/`no` are proofs; `undecided` means the
// intervals overlap too much to tell.
inline Tri less(const RealBall& a, const RealBall& b) {
  if (a.upper() < b.lower()) return Tri::yes;
  if (a.lower() >= b.upper()) return Tri::no;
  return Tri::undecided;
}
inline Tri leq(const RealBall& a, const RealBall& b) {
  if (a.upper() <= b.lower()) return Tri::yes;
  if (a.lower() > b.upper()) return Tri::no;
  return Tri::undecided;
}

inline RealBall sum(const std::vector<RealBall>& v, mpfr_prec_t p) {
  RealBall acc = RealBall::exact_long(0);
  for (const auto& x : v) acc = add(acc, x, p);
  return acc;
}

// ---------------------------------------------------------------------------
// Ball: complex disk { z : |z - (re + i*im)| <= rad }
// ---------------------------------------------------------------------------

struct Ball {
  Dyadic re;
  Dyadic im;
  Dyadic rad;  // nonnegative, kRadPrec bits

  Ball() : re(64), im(64), rad(kRadPrec) {}
  Ball(Dyadic r, Dyadic i, Dyadic rr) : re(std::move(r)), im(std::move(i)), rad(std::move(rr)) {}

  static Ball exact(Dyadic r, Dyadic i) { return {std::move(r), std::move(i), Dyadic(kRadPrec)}; }
  static Ball exact_long(long r, long i = 0) {
    return exact(Dyadic::from_long(r), Dyadic::from_long(i));
  }
  static Ball from_real(const RealBall& x) { return {x.mid, Dyadic(64), x.rad}; }

  bool is_exact() const { return rad.is_zero(); }

  Ball conj() const { return {re, im.neg(), rad}; }

  /// Enclosure of |z| over the disk.
  RealBall abs(mpfr_prec_t p = kRadPrec + 34) const {
    Dyadic h(p);
    int t = mpfr_hypot(h.raw(), re.raw(), im.raw(), MPFR_RNDN);
    Dyadic r = detail::rad_add(rad, detail::rnd_error(h, t));
    return {std::move(h), std::move(r)};
  }

  /// Projection enclosures.
  RealBall real() const { return {re, rad}; }
  RealBall imag() const { return {im, rad}; }

  /// Certified |z| > 0 over the whole disk?
  bool certainly_nonzero() const {
    Dyadic h = Dyadic::hypot(re, im, kRadPrec + 8, MPFR_RNDD);
    return Dyadic::sub(h, rad, kRadPrec, MPFR_RNDD).sgn() > 0;
  }

  /// May the disk contain zero?  (Complement of certainly_nonzero.)
  bool may_contain_zero() const { return !certainly_nonzero(); }

  /// Exact containment of a rational point (x + iy).
  bool contains(const mpq_class& x, const mpq_class& y) const {
    mpq_class dr = x - re.to_mpq(), di = y - im.to_mpq();
    mpq_class r = rad.to_mpq();
    return dr * dr + di * di <= r * r;
  }
};

/// Upper bound of |a.mid - b.mid| minus (a.rad + b.rad) > 0 certifies the two
/// disks disjoint.
inline bool certainly_disjoint(const Ball& a, const Ball& b) {
  // RNDZ never increases |a.mid - b.mid| componentwise, so the rounded-down
  // hypot is a certified lower bound on the midpoint distance.
  Dyadic dr = Dyadic::sub(a.re, b.re, kRadPrec + 8, MPFR_RNDZ);
  Dyadic di = Dyadic::sub(a.im, b.im, kRadPrec + 8, MPFR_RNDZ);
  Dyadic dist = Dyadic::hypot(dr, di, kRadPrec + 8, MPFR_RNDD);
  Dyadic rr = detail::rad_add(a.rad, b.rad);
  return dist > rr;
}

/// Do the two disks certainly intersect (midpoint distance upper bound within
/// radius sum)?
inline bool certainly_intersect(const Ball& a, const Ball& b) {
  Dyadic dr = Dyadic::sub(a.re, b.re, kRadPrec + 8, MPFR_RNDA);
  Dyadic di = Dyadic::sub(a.im, b.im, kRadPrec + 8, MPFR_RNDA);
  Dyadic dist = Dyadic::hypot(dr, di, kRadPrec + 8, MPFR_RNDU);
  Dyadic rr = Dyadic::add(a.rad, b.rad, kRadPrec, MPFR_RNDD);
  return dist <= rr;
}

/// Is disk `inner` certainly contained in the open disk `outer`?
inline bool certainly_inside(const Ball& inner, const Ball& outer) {
  Dyadic dr = Dyadic::sub(inner.re, outer.re, kRadPrec + 8, MPFR_RNDA);
  Dyadic di = Dyadic::sub(inner.im, outer.im, kRadPrec + 8, MPFR_RNDA);
  Dyadic dist = Dyadic::hypot(dr, di, kRadPrec + 8, MPFR_RNDU);
  Dyadic lhs = detail::rad_add(dist, inner.rad);
  return lhs < outer.rad;
}

inline Ball add(const Ball& a, const Ball& b, mpfr_prec_t p) {
  Dyadic r(p), i(p);
  int tr = mpfr_add(r.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  int ti = mpfr_add(i.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  Dyadic rad = detail::rad_add(a.rad, b.rad);
  rad = detail::rad_add(rad, detail::rnd_error(r, tr));
  rad = detail::rad_add(rad, detail::rnd_error(i, ti));
  return {std::move(r), std::move(i), std::move(rad)};
}

inline Ball sub(const Ball& a, const Ball& b, mpfr_prec_t p) {
  Dyadic r(p), i(p);
  int tr = mpfr_sub(r.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  int ti = mpfr_sub(i.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  Dyadic rad = detail::rad_add(a.rad, b.rad);
  rad = detail::rad_add(rad, detail::rnd_error(r, tr));
  rad = detail::rad_add(rad, detail::rnd_error(i, ti));
  return {std::move(r), std::move(i), std::move(rad)};
}

inline Ball neg(const Ball& a) { return {a.re.neg(), a.im.neg(), a.rad}; }

inline Ball mul(const Ball& a, const Ball& b, mpfr_prec_t p) {
  Dyadic r(p), i(p);
  int tr = mpfr_fmms(r.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  int ti = mpfr_fmma(i.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  Dyadic am = Dyadic::hypot(a.re, a.im, kRadPrec + 4, MPFR_RNDU);
  Dyadic bm = Dyadic::hypot(b.re, b.im, kRadPrec + 4, MPFR_RNDU);
  Dyadic rad = detail::rad_mul(am, b.rad);
  rad = detail::rad_add(rad, detail::rad_mul(bm, a.rad));
  rad = detail::rad_add(rad, detail::rad_mul(a.rad, b.rad));
  rad = detail::rad_add(rad, detail::rnd_error(r, tr));
  rad = detail::rad_add(rad, detail::rnd_error(i, ti));
  return {std::move(r), std::move(i), std::move(rad)};
}

inline Ball add_mpz(const Ball& a, const mpz_class& z, mpfr_prec_t p) {
  Dyadic r(p);
  int tr = mpfr_add_z(r.raw(), a.re.raw(), z.get_mpz_t(), MPFR_RNDN);
  Dyadic i(p);
  int ti = mpfr_set(i.raw(), a.im.raw(), MPFR_RNDN);
  Dyadic rad = detail::rad_add(a.rad, detail::rnd_error(r, tr));
  rad = detail::rad_add(rad, detail::rnd_error(i, ti));
  return {std::move(r), std::move(i), std::move(rad)};
}

inline Ball mul_pow2(const Ball& a, long e) {
  return {a.re.mul_2si(e), a.im.mul_2si(e), a.rad.mul_2si(e)};
}

/// Inflate the radius by `extra` (rounded up).
inline Ball inflate(const Ball& a, const Dyadic& extra) {
  return {a.re, a.im, detail::rad_add(a.rad, extra)};
}

/// Reciprocal of a disk certified away from zero.  The radius is certified a
/// posteriori: if c approximates 1/z then |1/z - c| <= |c*z - 1| / |z|.
inline Ball inv(const Ball& b, mpfr_prec_t p) {
  Dyadic habs = Dyadic::hypot(b.re, b.im, kRadPrec + 8, MPFR_RNDD);
  Dyadic lo = Dyadic::sub(habs, b.rad, kRadPrec, MPFR_RNDD);
  if (lo.sgn() <= 0) throw ZeroInput("reciprocal of disk containing zero");
  mpfr_prec_t wp = p + 32;
  Dyadic den(wp), cre(wp), cim(wp);
  mpfr_fmma(den.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_div(cre.raw(), b.re.raw(), den.raw(), MPFR_RNDN);
  mpfr_div(cim.raw(), b.im.raw(), den.raw(), MPFR_RNDN);
  mpfr_neg(cim.raw(), cim.raw(), MPFR_RNDN);
  Ball c = Ball::exact(cre, cim);
  Ball e = add_mpz(mul(c, b, wp), mpz_class(-1), wp);
  Dyadic err_hi = e.abs().upper();
  Dyadic rad = Dyadic::div(err_hi, lo, kRadPrec, MPFR_RNDU);
  return {std::move(cre), std::move(cim), std::move(rad)};
}

inline Ball div(const Ball& a, const Ball& b, mpfr_prec_t p) {
  return mul(a, inv(b, p + 8), p);
}

inline Ball conj(const Ball& a) { return a.conj(); }

}  // namespace cfcert
