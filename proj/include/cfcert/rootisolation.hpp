#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "cfcert/ball.hpp"
#include "cfcert/config.hpp"
#include "cfcert/dyadic.hpp"
#include "cfcert/errors.hpp"
#include "cfcert/intpoly.hpp"

namespace cfcert {

namespace detail {

// Plain to-nearest complex arithmetic used inside the Aberth iteration,
// where no certification is needed.
struct CPoint {
  Dyadic re, im;
};

inline CPoint cadd(const CPoint& a, const CPoint& b, mpfr_prec_t w) {
  return {Dyadic::add(a.re, b.re, w, MPFR_RNDN), Dyadic::add(a.im, b.im, w, MPFR_RNDN)};
}
inline CPoint csub(const CPoint& a, const CPoint& b, mpfr_prec_t w) {
  return {Dyadic::sub(a.re, b.re, w, MPFR_RNDN), Dyadic::sub(a.im, b.im, w, MPFR_RNDN)};
}
inline CPoint cmul(const CPoint& a, const CPoint& b, mpfr_prec_t w) {
  Dyadic r(w), i(w);
  mpfr_fmms(r.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmma(i.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  return {std::move(r), std::move(i)};
}
inline CPoint cdiv(const CPoint& a, const CPoint& b, mpfr_prec_t w) {
  Dyadic d(w);
  mpfr_fmma(d.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
  CPoint n = cmul(a, {b.re, b.im.neg()}, w);
  return {Dyadic::div(n.re, d, w, MPFR_RNDN), Dyadic::div(n.im, d, w, MPFR_RNDN)};
}
inline Dyadic cabs(const CPoint& a, mpfr_prec_t w) {
  return Dyadic::hypot(a.re, a.im, w, MPFR_RNDN);
}
inline bool czero(const CPoint& a) { return a.re.is_zero() && a.im.is_zero(); }

/// Value and derivative of p at z (to-nearest Horner).
inline void horner2(const std::vector<CPoint>& coeff, const CPoint& z, mpfr_prec_t w,
                    CPoint& val, CPoint& der) {
  val = coeff.back();
  der = {Dyadic::from_long(0), Dyadic::from_long(0)};
  for (size_t i = coeff.size() - 1; i-- > 0;) {
    der = cadd(cmul(der, z, w), val, w);
    val = cadd(cmul(val, z, w), coeff[i], w);
  }
}

/// Initial root guesses from the upper convex hull of (i, log2|c_i|)
/// (Newton polygon): each hull edge of horizontal span k contributes k
/// starting points on the circle of the balancing radius.
inline std::vector<CPoint> initial_guesses(const IntPolynomial& p, mpfr_prec_t w) {
  long n = p.degree();
  std::vector<std::pair<long, double>> pts;
  for (long i = 0; i <= n; ++i)
    if (p[static_cast<size_t>(i)] != 0)
      pts.emplace_back(i, log2_abs_approx(p[static_cast<size_t>(i)]));
  // Monotone chain, keeping the hull seen from above.
  std::vector<std::pair<long, double>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      double cross = (b.first - a.first) * (q.second - a.second) -
                     (q.first - a.first) * (b.second - a.second);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(q);
  }
  std::vector<CPoint> z;
  z.reserve(static_cast<size_t>(n));
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    long i1 = hull[e].first, i2 = hull[e + 1].first;
    double l1 = hull[e].second, l2 = hull[e + 1].second;
    long k = i2 - i1;
    double log2_u = (l1 - l2) / static_cast<double>(k);
    Dyadic u = Dyadic::exp2(Dyadic::from_double(log2_u), w, MPFR_RNDN);
    for (long j = 0; j < k; ++j) {
      double theta = 2.0 * M_PI * (static_cast<double>(j) + 0.25) / static_cast<double>(k) +
                     0.57 * static_cast<double>(e) + 0.40;
      Dyadic cre = Dyadic::mul(u, Dyadic::from_double(std::cos(theta)), w, MPFR_RNDN);
      Dyadic cim = Dyadic::mul(u, Dyadic::from_double(std::sin(theta)), w, MPFR_RNDN);
      z.push_back({std::move(cre), std::move(cim)});
    }
  }
  // Degenerate hull (shouldn't happen): fall back to a unit-circle fan.
  while (z.size() < static_cast<size_t>(n)) {
    double theta = 2.0 * M_PI * (static_cast<double>(z.size()) + 0.3) / static_cast<double>(n);
    z.push_back({Dyadic::from_double(std::cos(theta)), Dyadic::from_double(std::sin(theta))});
  }
  z.resize(static_cast<size_t>(n));
  return z;
}

/// Simultaneous root refinement (Aberth-Ehrlich), uncertified.
inline void aberth(const IntPolynomial& p, std::vector<CPoint>& z, mpfr_prec_t w) {
  size_t m = z.size();
  std::vector<CPoint> coeff;
  coeff.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Dyadic d(w);
    mpfr_set_z(d.raw(), c.get_mpz_t(), MPFR_RNDN);
    coeff.push_back({std::move(d), Dyadic::from_long(0)});
  }
  long max_iters = 40 + 8 * static_cast<long>(m);
  Dyadic tol = Dyadic::pow2(-(w - 12));
  for (long it = 0; it < max_iters; ++it) {
    bool converged = true;
    for (size_t i = 0; i < m; ++i) {
      CPoint pv, dv;
      horner2(coeff, z[i], w, pv, dv);
      if (czero(pv)) continue;
      if (czero(dv)) {  // critical point: nudge deterministically
        z[i].re = Dyadic::add(z[i].re, Dyadic::pow2(-(it + 4)), w, MPFR_RNDN);
        converged = false;
        continue;
      }
      CPoint newton = cdiv(pv, dv, w);
      CPoint s{Dyadic::from_long(0), Dyadic::from_long(0)};
      bool collision = false;
      for (size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        CPoint diff = csub(z[i], z[j], w);
        if (czero(diff)) { collision = true; break; }
        s = cadd(s, cdiv({Dyadic::from_long(1), Dyadic::from_long(0)}, diff, w), w);
      }
      if (collision) {
        z[i].re = Dyadic::add(z[i].re, Dyadic::pow2(-(it + 4)), w, MPFR_RNDN);
        converged = false;
        continue;
      }
      CPoint denom = csub({Dyadic::from_long(1), Dyadic::from_long(0)},
                          cmul(newton, s, w), w);
      CPoint corr = czero(denom) ? newton : cdiv(newton, denom, w);
      z[i] = csub(z[i], corr, w);
      Dyadic rel = Dyadic::mul(cabs(z[i], kRadPrec + 8), tol, kRadPrec + 8, MPFR_RNDN);
      if (cabs(corr, kRadPrec + 8) > rel) converged = false;
    }
    if (converged) break;
  }
}

/// A-posteriori inclusion disks: around each approximation, the disk of
/// radius deg(p) * |p(z)/p'(z)|.  If all disks are pairwise disjoint, each
/// contains exactly one root of p (Gerschgorin applied to the companion
/// system).  Requires p squarefree and exactly deg(p) approximations.
inline std::optional<std::vector<Ball>> certify_disks(const IntPolynomial& p,
                                                      const std::vector<CPoint>& z,
                                                      mpfr_prec_t w) {
  IntPolynomial dp = p.derivative();
  long m = p.degree();
  std::vector<Ball> disks;
  disks.reserve(z.size());
  for (const auto& zi : z) {
    Ball center = Ball::exact(zi.re, zi.im);
    Ball pv = p.eval_ball(center, w);
    Ball dv = dp.eval_ball(center, w);
    Dyadic dlo = Dyadic::hypot(dv.re, dv.im, kRadPrec + 8, MPFR_RNDD);
    dlo = Dyadic::sub(dlo, dv.rad, kRadPrec, MPFR_RNDD);
    if (dlo.sgn() <= 0) return std::nullopt;
    Dyadic phi = pv.abs().upper();
    Dyadic r = Dyadic::div(phi, dlo, kRadPrec, MPFR_RNDU);
    r = Dyadic::mul(r, Dyadic::from_long(m), kRadPrec, MPFR_RNDU);
    disks.emplace_back(zi.re, zi.im, std::move(r));
  }
  for (size_t i = 0; i < disks.size(); ++i)
    for (size_t j = i + 1; j < disks.size(); ++j)
      if (!certainly_disjoint(disks[i], disks[j])) return std::nullopt;
  return disks;
}

using StopFn = std::function<bool(const Ball&)>;

/// One interval-Newton contraction: N = c - p(c)/p'(D).  Any root of p in D
/// lies in N (mean-value enclosure over the convex disk), so when N is
/// certainly inside D it is again an isolating disk for the same root.
/// Returns nullopt when the step does not certify a contraction.
inline std::optional<Ball> newton_step(const IntPolynomial& p, const IntPolynomial& dp,
                                       const Ball& D, mpfr_prec_t w) {
  Ball dv = dp.eval_ball(D, w);
  if (!dv.certainly_nonzero()) return std::nullopt;
  Ball c = Ball::exact(D.re, D.im);
  Ball pv = p.eval_ball(c, w);
  Ball N = sub(c, div(pv, dv, w), w);
  if (!certainly_inside(N, D)) return std::nullopt;
  return N;
}

}  // namespace detail

/// Refine an isolating disk for a simple root of p until `stop` accepts it.
/// The input must contain exactly one root of p.
inline Ball refine_root(const IntPolynomial& p, Ball D, const detail::StopFn& stop,
                        mpfr_prec_t prec_cap = max_precision()) {
  IntPolynomial dp = p.derivative();
  mpfr_prec_t w = std::max<mpfr_prec_t>(96, D.re.prec() + 32);
  int slow = 0;
  while (!stop(D)) {
    auto N = detail::newton_step(p, dp, D, w);
    bool halved = false;
    if (N) {
      halved = N->rad < D.rad.mul_2si(-1);
      D = *N;
    }
    if (halved) {
      slow = 0;
      continue;
    }
    if (w < prec_cap) {
      w = std::min<mpfr_prec_t>(w * 2, prec_cap);
      slow = 0;
      continue;
    }
    if (++slow > 8) throw PrecisionExhausted("root refinement stalled at precision cap");
  }
  return D;
}

/// Certified isolation of all complex roots of a squarefree-reduced p.
/// Returns one disk per distinct root, each certified to contain exactly one
/// root of the squarefree part, sorted by (Re, Im) of the midpoints.
/// `stop` decides when a disk is small enough.
inline std::vector<Ball> isolate_core(const IntPolynomial& poly, const detail::StopFn& stop,
                                      mpfr_prec_t prec_cap = max_precision()) {
  if (poly.is_zero()) throw ZeroInput("root isolation of the zero polynomial");
  IntPolynomial q = squarefree_part(poly);
  std::vector<Ball> out;
  if (q.degree() >= 1 && q[0] == 0) {  // simple root at the origin, exact
    out.push_back(Ball::exact_long(0));
    std::vector<mpz_class> defl(q.coeffs().begin() + 1, q.coeffs().end());
    q = IntPolynomial(std::move(defl));
  }
  if (q.degree() == 0) {
    std::sort(out.begin(), out.end(), [](const Ball& a, const Ball& b) {
      return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    return out;
  }
  if (q.degree() == 1) {
    // Exact rational root: enclose -c0/c1 by directed rounding.
    mpfr_prec_t w = 128;
    Dyadic num = Dyadic::from_mpz(q[0]).neg();
    Dyadic den = Dyadic::from_mpz(q[1]);
    for (;;) {
      Dyadic a = Dyadic::div(num, den, w, MPFR_RNDD);
      Dyadic b = Dyadic::div(num, den, w, MPFR_RNDU);
      RealBall rb = RealBall::from_endpoints(a, b, w);
      Ball B{rb.mid, Dyadic::from_long(0), rb.rad};
      if (stop(B)) {
        out.push_back(std::move(B));
        break;
      }
      if (w >= prec_cap) throw PrecisionExhausted("rational root enclosure at cap");
      w = std::min<mpfr_prec_t>(w * 2, prec_cap);
    }
    std::sort(out.begin(), out.end(), [](const Ball& a, const Ball& b) {
      return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    return out;
  }

  mpfr_prec_t w = 64;
  std::vector<detail::CPoint> z = detail::initial_guesses(q, w);
  for (;;) {
    detail::aberth(q, z, w);
    auto disks = detail::certify_disks(q, z, w);
    if (disks) {
      bool ok = true;
      std::vector<Ball> refined;
      refined.reserve(disks->size());
      try {
        for (auto& d : *disks) refined.push_back(refine_root(q, d, stop, prec_cap));
      } catch (const PrecisionExhausted&) {
        ok = false;
      }
      if (ok) {
        for (auto& b : refined) out.push_back(std::move(b));
        std::sort(out.begin(), out.end(), [](const Ball& a, const Ball& b) {
          return a.re < b.re || (a.re == b.re && a.im < b.im);
        });
        return out;
      }
    }
    if (w >= prec_cap) throw PrecisionExhausted("root isolation at precision cap");
    w = std::min<mpfr_prec_t>(w * 2, prec_cap);
  }
}

/// Disks certified to contain exactly one root each, radius at most max_rad.
inline std::vector<Ball> isolate_roots(const IntPolynomial& p, const Dyadic& max_rad,
                                       mpfr_prec_t prec_cap = max_precision()) {
  return isolate_core(p, [&](const Ball& b) { return b.rad <= max_rad; }, prec_cap);
}

/// Isolation with a relative-accuracy target: rad <= 2^-bits * |midpoint|.
inline std::vector<Ball> isolate_roots_rel(const IntPolynomial& p, long bits,
                                           mpfr_prec_t prec_cap = max_precision()) {
  auto stop = [bits](const Ball& b) {
    if (b.rad.is_zero()) return true;
    Dyadic m = Dyadic::hypot(b.re, b.im, kRadPrec + 8, MPFR_RNDD);
    return b.rad <= m.mul_2si(-bits);
  };
  return isolate_core(p, stop, prec_cap);
}

/// Relative-accuracy stop condition for a single disk.
inline detail::StopFn rel_stop(long bits) {
  return [bits](const Ball& b) {
    if (b.rad.is_zero()) return true;
    Dyadic m = Dyadic::hypot(b.re, b.im, kRadPrec + 8, MPFR_RNDD);
    return b.rad <= m.mul_2si(-bits);
  };
}

inline detail::StopFn abs_stop(const Dyadic& max_rad) {
  return [max_rad](const Ball& b) { return b.rad <= max_rad; };
}

}  // namespace cfcert
