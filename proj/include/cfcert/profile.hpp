#pragma once

#include <vector>

#include "cfcert/algebraic.hpp"

namespace cfcert {

/// Certified size profile of an algebraic number, all magnitudes in log2
/// scale: house = max modulus over the conjugates, Mahler measure
/// M = |lead| * prod max(1, |root_i|), absolute Weil height H = M^(1/deg).
struct NumberProfile {
  long degree = 0;
  RealBall log2_house;
  RealBall log2_mahler;
  RealBall log2_height;
  Tri attains_house = Tri::undecided;
};

namespace detail {

/// Enclosure of max_i |b_i| over nonempty root balls.
inline RealBall max_modulus(const std::vector<RealBall>& mods, mpfr_prec_t p) {
  Dyadic lo = mods[0].lower(), hi = mods[0].upper();
  for (size_t i = 1; i < mods.size(); ++i) {
    lo = Dyadic::max(lo, mods[i].lower());
    hi = Dyadic::max(hi, mods[i].upper());
  }
  return RealBall::from_endpoints(lo, hi, p);
}

/// log2 of |lead| * prod max(1, |b_i|), outward rounded.
inline RealBall log2_mahler_from(const mpz_class& lead, const std::vector<RealBall>& mods,
                                 mpfr_prec_t p) {
  std::vector<RealBall> terms;
  terms.reserve(mods.size() + 1);
  mpz_class al = abs(lead);
  terms.push_back(log2(RealBall::exact_mpz(al), p));
  Dyadic one = Dyadic::from_long(1);
  for (const RealBall& m : mods) {
    Dyadic lo = Dyadic::max(m.lower(), one), hi = Dyadic::max(m.upper(), one);
    terms.push_back(log2(RealBall::from_endpoints(lo, hi, p), p));
  }
  return sum(terms, p);
}

/// Union-find classes of certified-equal modulus among the root balls:
/// conjugate pairs plus exact negation partners.
inline UnionFind modulus_classes(const IntPolynomial& q, std::vector<Ball>& balls,
                                 const IntPolynomial& neg_gcd, long bits,
                                 mpfr_prec_t prec_cap) {
  UnionFind uf(balls.size());
  std::vector<Cluster> clusters = classify_conjugation(q, balls, prec_cap);
  for (const Cluster& c : clusters)
    if (c.partner) uf.unite(c.rep, *c.partner);
  std::vector<size_t> npart = negation_partners(neg_gcd, balls, bits, prec_cap);
  for (size_t i = 0; i < npart.size(); ++i)
    if (npart[i] != SIZE_MAX) uf.unite(i, npart[i]);
  return uf;
}

}  // namespace detail

inline NumberProfile profile(const AlgebraicNumber& a, mpfr_prec_t prec) {
  NumberProfile out;
  out.degree = a.degree();
  if (a.is_zero()) {
    // house(0) = 0: represent log2 as an exact -infinity endpoint.
    Dyadic ninf(kRadPrec);
    mpfr_set_inf(ninf.raw(), -1);
    out.log2_house = RealBall::exact(ninf);
    out.log2_mahler = RealBall::exact_long(0);
    out.log2_height = RealBall::exact_long(0);
    out.attains_house = Tri::yes;
    return out;
  }

  const IntPolynomial& q = a.min_poly();
  mpfr_prec_t wp = prec + 16;
  std::vector<Ball> balls = isolate_roots_rel(q, prec, max_precision());
  std::vector<RealBall> mods;
  mods.reserve(balls.size());
  for (const Ball& b : balls) mods.push_back(b.abs(wp));

  out.log2_house = log2(detail::max_modulus(mods, wp), wp);
  out.log2_mahler = detail::log2_mahler_from(q.lead(), mods, wp);
  out.log2_height = div_ui(out.log2_mahler, static_cast<unsigned long>(out.degree), wp);

  if (balls.size() == 1) {
    out.attains_house = Tri::yes;
    return out;
  }

  // Does the distinguished root attain the house?  Strict comparisons by
  // interval separation; equalities only by structural certificates.
  IntPolynomial neg_gcd = gcd(q, q.negate_var());
  mpfr_prec_t cap = std::min<mpfr_prec_t>(4 * prec + 256, max_precision());
  for (long bits = prec;; bits *= 2) {
    Ball iso = a.isolator();
    size_t dist = detail::match_root(q, iso, balls, max_precision());
    detail::UnionFind uf = detail::modulus_classes(q, balls, neg_gcd, bits, max_precision());
    std::vector<RealBall> m2;
    m2.reserve(balls.size());
    for (const Ball& b : balls) m2.push_back(b.abs(mpfr_prec_t(bits) + 16));

    bool undecided = false;
    Tri verdict = Tri::yes;
    for (size_t i = 0; i < balls.size(); ++i) {
      if (i == dist || uf.find(i) == uf.find(dist)) continue;
      Tri gt = less(m2[dist], m2[i]);  // is |root_i| certainly larger?
      if (gt == Tri::yes) {
        verdict = Tri::no;
        break;
      }
      if (gt == Tri::undecided) {
        Tri ge = leq(m2[i], m2[dist]);
        if (ge != Tri::yes) undecided = true;
      }
    }
    if (verdict == Tri::no) {
      out.attains_house = Tri::no;
      return out;
    }
    if (!undecided) {
      out.attains_house = Tri::yes;
      return out;
    }
    if (2 * bits > static_cast<long>(cap)) {
      out.attains_house = Tri::undecided;
      return out;
    }
    balls = isolate_roots_rel(q, 2 * bits, max_precision());
  }
}

/// log2 of the Liouville separation bound for non-conjugate alpha, beta:
/// |alpha - beta| >= 2^-(da db) M(alpha)^-db M(beta)^-da.  The returned
/// enclosure is certified <= log2 |alpha - beta|.
inline RealBall separation_lower_bound(const AlgebraicNumber& a, const AlgebraicNumber& b,
                                       mpfr_prec_t prec = 128) {
  if (a.min_poly() == b.min_poly())
    throw ConjugateInputs("separation bound requires distinct minimal polynomials");
  mpfr_prec_t wp = prec + 16;
  RealBall ma = profile(a, prec).log2_mahler;
  RealBall mb = profile(b, prec).log2_mahler;
  mpz_class da(a.degree()), db(b.degree());
  RealBall t = add(mul_mpz(ma, db, wp), mul_mpz(mb, da, wp), wp);
  t = add(t, RealBall::exact_mpz(da * db), wp);
  return neg(t);
}

}  // namespace cfcert
