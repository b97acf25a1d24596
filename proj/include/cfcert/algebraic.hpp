#pragma once

#include <functional>
#include <numeric>
#include <utility>
#include <variant>
#include <vector>

#include "cfcert/minpoly.hpp"

namespace cfcert {

/// An exact algebraic number: primitive irreducible integer polynomial with
/// positive leading coefficient, plus a complex ball certified to contain
/// exactly one of its roots (the represented number).  Immutable.
class AlgebraicNumber {
 public:
  /// Trusted constructor: the caller guarantees the invariant (poly primitive
  /// irreducible with positive lead, isolator holds exactly one root).
  AlgebraicNumber(IntPolynomial poly, Ball isolator)
      : poly_(std::move(poly)), isolator_(std::move(isolator)) {}

  static AlgebraicNumber from_integer(const mpz_class& n) {
    return {IntPolynomial::linear_root(n), Ball::exact(Dyadic::from_mpz(n), Dyadic::from_long(0))};
  }
  static AlgebraicNumber from_integer(long n) { return from_integer(mpz_class(n)); }

  static AlgebraicNumber from_rational(const mpq_class& r) {
    mpq_class c = r;
    c.canonicalize();
    RealBall rb = RealBall::from_mpq(c, 128);
    return {IntPolynomial::rational_root(c), Ball{rb.mid, Dyadic::from_long(0), rb.rad}};
  }

  const IntPolynomial& min_poly() const { return poly_; }
  const Ball& isolator() const { return isolator_; }
  long degree() const { return poly_.degree(); }
  bool is_rational() const { return degree() == 1; }
  bool is_algebraic_integer() const { return poly_.is_monic(); }
  bool is_zero() const { return degree() == 1 && poly_[0] == 0; }

  /// Exact value when degree is 1.
  mpq_class rational_value() const {
    if (degree() != 1) throw Error("rational_value of an irrational number");
    mpq_class r(-poly_[0], poly_[1]);
    r.canonicalize();
    return r;
  }

  /// Enclosure with relative radius at most 2^-prec (exact for 0).
  Ball value(mpfr_prec_t prec) const {
    if (degree() == 1) {
      mpq_class r = rational_value();
      if (r == 0) return Ball::exact_long(0);
      RealBall rb = RealBall::from_mpq(r, prec + 8);
      return Ball{rb.mid, Dyadic::from_long(0), rb.rad};
    }
    return refine_root(poly_, isolator_, rel_stop(prec));
  }

 private:
  IntPolynomial poly_;
  Ball isolator_;
};

/// Decide whether two values denote the same algebraic number.
inline bool same_number(const AlgebraicNumber& a, const AlgebraicNumber& b,
                        mpfr_prec_t prec_cap = max_precision()) {
  if (!(a.min_poly() == b.min_poly())) return false;
  if (a.degree() == 1) return true;  // unique root
  auto balls = isolate_roots_rel(a.min_poly(), 48, prec_cap);
  Ball ha = a.isolator(), hb = b.isolator();
  size_t ia = detail::match_root(a.min_poly(), ha, balls, prec_cap);
  size_t ib = detail::match_root(b.min_poly(), hb, balls, prec_cap);
  return ia == ib;
}

// --- root selectors --------------------------------------------------------------

struct LargestModulus {};
struct LargestReal {};
struct ExplicitDisk {
  Ball disk;
};
using RootSelector = std::variant<LargestModulus, LargestReal, ExplicitDisk>;

namespace detail {

struct UnionFind {
  std::vector<size_t> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), size_t{0}); }
  size_t find(size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

/// Negation partners among the root balls of squarefree q: i and j are linked
/// only when z_j = -z_i exactly, certified through the gcd of q(x) and q(-x)
/// (whose roots are precisely the roots of q closed under negation).
inline std::vector<size_t> negation_partners(const IntPolynomial& neg_gcd,
                                             const std::vector<Ball>& balls, long bits,
                                             mpfr_prec_t prec_cap) {
  std::vector<size_t> partner(balls.size(), SIZE_MAX);
  if (neg_gcd.degree() < 1) return partner;
  std::vector<Ball> gb = isolate_roots_rel(neg_gcd, bits, prec_cap);
  for (const Ball& g : gb) {
    size_t host = SIZE_MAX, mate = SIZE_MAX;
    int h1 = 0, h2 = 0;
    for (size_t j = 0; j < balls.size(); ++j)
      if (possibly_meets(g, balls[j])) {
        host = j;
        ++h1;
      }
    if (h1 != 1) continue;
    Ball ng = neg(balls[host]);
    for (size_t j = 0; j < balls.size(); ++j)
      if (possibly_meets(ng, balls[j])) {
        mate = j;
        ++h2;
      }
    if (h2 != 1) continue;
    partner[host] = mate;
    partner[mate] = host;
  }
  return partner;
}

// Principal-argument rank over [0, 2pi): positive real axis first, then the
// upper half plane, the negative real axis, the lower half plane.
enum class ArgRank { pos_real = 0, upper = 1, neg_real = 2, lower = 3, unknown = 4 };

inline size_t select_largest_modulus(const IntPolynomial& q, std::vector<Ball>& balls,
                                     long bits, const IntPolynomial& neg_gcd,
                                     mpfr_prec_t prec_cap) {
  // Modulus prefilter: keep roots not certainly below the best lower bound.
  mpfr_prec_t wp = mpfr_prec_t(bits) + 32;
  std::vector<Dyadic> lo, hi;
  lo.reserve(balls.size());
  hi.reserve(balls.size());
  for (const Ball& b : balls) {
    RealBall m = b.abs(wp);
    lo.push_back(m.lower());
    hi.push_back(m.upper());
  }
  size_t best = 0;
  for (size_t i = 1; i < balls.size(); ++i)
    if (lo[best] < lo[i]) best = i;
  std::vector<size_t> S;
  for (size_t i = 0; i < balls.size(); ++i)
    if (!(hi[i] < lo[best])) S.push_back(i);
  if (S.size() == 1) return S[0];

  // The survivors must form one certified equal-modulus class (conjugate and
  // negation symmetry are the only equality certificates available).
  std::vector<Cluster> clusters;
  try {
    clusters = classify_conjugation(q, balls, prec_cap);
  } catch (const PrecisionExhausted&) {
    return SIZE_MAX;
  }
  UnionFind uf(balls.size());
  std::vector<ArgRank> rank(balls.size(), ArgRank::unknown);
  for (const Cluster& c : clusters) {
    if (c.partner) {
      uf.unite(c.rep, *c.partner);
      rank[c.rep] = ArgRank::upper;
      rank[*c.partner] = ArgRank::lower;
    } else {
      RealBall re = balls[c.rep].real();
      if (re.is_positive())
        rank[c.rep] = ArgRank::pos_real;
      else if (re.is_negative())
        rank[c.rep] = ArgRank::neg_real;
    }
  }
  std::vector<size_t> npart = negation_partners(neg_gcd, balls, bits, prec_cap);
  for (size_t i = 0; i < npart.size(); ++i)
    if (npart[i] != SIZE_MAX) uf.unite(i, npart[i]);

  size_t cls = uf.find(S[0]);
  for (size_t i : S)
    if (uf.find(i) != cls) return SIZE_MAX;  // tie not certified equal

  // Smallest principal argument within the class.
  std::vector<size_t> members;
  for (size_t i = 0; i < balls.size(); ++i)
    if (uf.find(i) == cls) members.push_back(i);
  ArgRank bestRank = ArgRank::unknown;
  for (size_t i : members) {
    if (rank[i] == ArgRank::unknown) return SIZE_MAX;  // real with re sign open
    if (static_cast<int>(rank[i]) < static_cast<int>(bestRank)) bestRank = rank[i];
  }
  std::vector<size_t> cand;
  for (size_t i : members)
    if (rank[i] == bestRank) cand.push_back(i);
  if (cand.size() == 1) return cand[0];
  if (cand.size() == 2 && (bestRank == ArgRank::upper || bestRank == ArgRank::lower)) {
    // Equal modulus, same half plane: the argument order is the real-part
    // order (reversed in the lower half plane).
    Tri lt = less(balls[cand[0]].real(), balls[cand[1]].real());
    if (lt == Tri::undecided) return SIZE_MAX;
    bool first_smaller_re = (lt == Tri::yes);
    bool want_smaller_re = (bestRank == ArgRank::lower);
    return (first_smaller_re == want_smaller_re) ? cand[0] : cand[1];
  }
  return SIZE_MAX;
}

inline size_t select_largest_real(const IntPolynomial& q, std::vector<Ball>& balls,
                                  mpfr_prec_t prec_cap) {
  std::vector<Cluster> clusters;
  try {
    clusters = classify_conjugation(q, balls, prec_cap);
  } catch (const PrecisionExhausted&) {
    return SIZE_MAX;
  }
  std::vector<size_t> reals;
  for (const Cluster& c : clusters)
    if (!c.partner) reals.push_back(c.rep);
  if (reals.empty())
    throw SelectorAmbiguous("largest-real: polynomial has no real root");
  size_t best = reals[0];
  for (size_t i = 1; i < reals.size(); ++i) {
    Tri lt = less(balls[best].real(), balls[reals[i]].real());
    if (lt == Tri::undecided) return SIZE_MAX;
    if (lt == Tri::yes) best = reals[i];
  }
  return best;
}

inline size_t select_explicit_disk(const std::vector<Ball>& balls, const Ball& disk) {
  size_t inside_idx = SIZE_MAX;
  int inside = 0;
  for (size_t i = 0; i < balls.size(); ++i) {
    if (certainly_inside(balls[i], disk)) {
      inside_idx = i;
      ++inside;
    } else if (!certainly_disjoint(balls[i], disk)) {
      return SIZE_MAX;  // boundary case still open: refine
    }
  }
  if (inside == 1) return inside_idx;
  throw SelectorAmbiguous(inside == 0 ? "explicit-disk: no root in the disk"
                                      : "explicit-disk: several roots in the disk");
}

}  // namespace detail

/// Construct the algebraic number given by the selected root of `poly`.
/// With require_monic set, the minimal polynomial of the selected root must
/// be monic (algebraic-integer context).
inline AlgebraicNumber mk_algebraic(const IntPolynomial& poly, const RootSelector& selector,
                                    const MinPolyOptions& opt = {}, bool require_monic = false) {
  if (poly.degree() < 1) throw ZeroInput("root selection on a constant polynomial");
  IntPolynomial q = squarefree_part(poly);
  IntPolynomial neg_gcd;
  if (std::holds_alternative<LargestModulus>(selector))
    neg_gcd = gcd(q, q.negate_var());

  size_t win = SIZE_MAX;
  std::vector<Ball> balls;
  for (long bits = 48;; bits *= 2) {
    if (bits > static_cast<long>(opt.prec_cap))
      throw SelectorAmbiguous("root selection undecided at maximum precision");
    balls = isolate_roots_rel(q, bits, opt.prec_cap);
    if (balls.size() == 1) {
      win = 0;
    } else if (std::holds_alternative<LargestModulus>(selector)) {
      win = detail::select_largest_modulus(q, balls, bits, neg_gcd, opt.prec_cap);
    } else if (std::holds_alternative<LargestReal>(selector)) {
      win = detail::select_largest_real(q, balls, opt.prec_cap);
    } else {
      win = detail::select_explicit_disk(balls, std::get<ExplicitDisk>(selector).disk);
    }
    if (win != SIZE_MAX) break;
  }

  MinPolyResult mp = min_poly_from_root(q, balls[win], opt);
  if (require_monic && !mp.poly.is_monic())
    throw NotMonicForIntegerContext("selected root is not an algebraic integer: " +
                                    mp.poly.to_string());
  return {std::move(mp.poly), std::move(mp.isolator)};
}

/// -alpha.  Exact: negation maps the root set of the negated polynomial
/// isometrically, so the reflected isolator still isolates.
inline AlgebraicNumber negate(const AlgebraicNumber& a) {
  return {a.min_poly().negate_var().primitive(), neg(a.isolator())};
}

/// 1/alpha via coefficient reversal; the isolator is a certified inversion of
/// a refined enclosure of alpha.
inline AlgebraicNumber reciprocal(const AlgebraicNumber& a,
                                  const MinPolyOptions& opt = {}) {
  if (a.is_zero()) throw ZeroInput("reciprocal of zero");
  if (a.is_rational()) {
    mpq_class r = a.rational_value();
    return AlgebraicNumber::from_rational(mpq_class(1) / r);
  }
  IntPolynomial rp = a.min_poly().reverse().primitive();
  for (long bits = 48;; bits *= 2) {
    if (bits > static_cast<long>(opt.prec_cap))
      throw PrecisionExhausted("reciprocal isolator at precision cap");
    Ball hv = inv(a.value(bits), mpfr_prec_t(bits) + 32);
    std::vector<Ball> rb = isolate_roots_rel(rp, bits, opt.prec_cap);
    int hits = 0;
    for (const Ball& b : rb)
      if (detail::possibly_meets(hv, b)) ++hits;
    if (hits == 1) return {std::move(rp), std::move(hv)};
  }
}

enum class CombineOp { add, mul };

namespace detail {

/// Minimal polynomial + isolator for the number enclosed by hint_at(bits),
/// known to be a root of `vanishing`.
inline AlgebraicNumber alg_from_hint(const IntPolynomial& vanishing,
                                     const std::function<Ball(long)>& hint_at,
                                     const MinPolyOptions& opt) {
  IntPolynomial sf = squarefree_part(vanishing);
  for (long bits = 48;; bits *= 2) {
    if (bits > static_cast<long>(opt.prec_cap))
      throw PrecisionExhausted("combined value not isolated at precision cap");
    Ball hint = hint_at(bits);
    std::vector<Ball> vb = isolate_roots_rel(sf, bits, opt.prec_cap);
    int hits = 0;
    for (const Ball& b : vb)
      if (possibly_meets(hint, b)) ++hits;
    if (hits != 1) continue;
    MinPolyResult mp = min_poly_from_root(sf, hint, opt);
    return {std::move(mp.poly), std::move(mp.isolator)};
  }
}

/// q(a + b*y) as a polynomial in y, exactly.
inline IntPolynomial compose_affine(const IntPolynomial& q, const mpz_class& a,
                                    const mpz_class& b) {
  IntPolynomial lin({a, b});
  IntPolynomial acc({q[q.degree()]});
  for (long j = q.degree() - 1; j >= 0; --j) acc = acc * lin + IntPolynomial({q[j]});
  return acc;
}

/// Res_y(p(y), q(x - y)): vanishes at every alpha_i + beta_j.
inline IntPolynomial resultant_sum_poly(const IntPolynomial& p, const IntPolynomial& q) {
  long N = p.degree() * q.degree();
  std::vector<mpq_class> xs(N + 1), ys(N + 1);
  for (long k = 0; k <= N; ++k) {
    xs[k] = k;
    ys[k] = resultant(p, compose_affine(q, mpz_class(k), mpz_class(-1)));
  }
  return IntPolynomial::interpolate(xs, ys);
}

/// Res_y(p(y), y^n q(x/y)): vanishes at every alpha_i * beta_j (q(0) != 0).
inline IntPolynomial resultant_prod_poly(const IntPolynomial& p, const IntPolynomial& q) {
  long n = q.degree();
  long N = p.degree() * n;
  std::vector<mpq_class> xs(N + 1), ys(N + 1);
  for (long k = 0; k <= N; ++k) {
    std::vector<mpz_class> c(n + 1);
    mpz_class kp = 1;
    for (long j = 0; j <= n; ++j) {
      c[n - j] = q[j] * kp;
      kp *= k;
    }
    xs[k] = k;
    ys[k] = resultant(p, IntPolynomial(std::move(c)));
  }
  return IntPolynomial::interpolate(xs, ys);
}

inline AlgebraicNumber combine_with_rational(CombineOp op, const AlgebraicNumber& a,
                                             const mpq_class& r, const MinPolyOptions& opt) {
  if (a.is_rational()) {
    mpq_class v = a.rational_value();
    return AlgebraicNumber::from_rational(op == CombineOp::add ? mpq_class(v + r)
                                                               : mpq_class(v * r));
  }
  if (op == CombineOp::mul && r == 0) return AlgebraicNumber::from_integer(0L);
  IntPolynomial np = op == CombineOp::add ? a.min_poly().shift_root(r).primitive()
                                          : a.min_poly().scale_root(r).primitive();
  RealBall rq = RealBall::from_mpq(r, 96);
  Ball rball{rq.mid, Dyadic::from_long(0), rq.rad};
  auto hint_at = [&](long bits) {
    RealBall rr = RealBall::from_mpq(r, mpfr_prec_t(bits) + 8);
    Ball rb{rr.mid, Dyadic::from_long(0), rr.rad};
    Ball av = a.value(bits);
    return op == CombineOp::add ? add(av, rb, mpfr_prec_t(bits) + 32)
                                : mul(av, rb, mpfr_prec_t(bits) + 32);
  };
  // np is irreducible (affine substitutions preserve irreducibility), so the
  // hint only needs to be certified as isolating.
  for (long bits = 48;; bits *= 2) {
    if (bits > static_cast<long>(opt.prec_cap))
      throw PrecisionExhausted("rational combination not isolated at precision cap");
    Ball hint = hint_at(bits);
    std::vector<Ball> vb = isolate_roots_rel(np, bits, opt.prec_cap);
    int hits = 0;
    for (const Ball& b : vb)
      if (possibly_meets(hint, b)) ++hits;
    if (hits == 1) return {np, hint};
  }
}

}  // namespace detail

/// Exact sum or product of two algebraic numbers through resultant
/// elimination, reduced to the true minimal polynomial.
inline AlgebraicNumber exact_combine(CombineOp op, const AlgebraicNumber& a,
                                     const AlgebraicNumber& b,
                                     long degree_cap = kDefaultExactDegreeCap,
                                     const MinPolyOptions& opt = {}) {
  if (a.degree() * b.degree() > degree_cap)
    throw DegreeCapExceeded("degree product " + std::to_string(a.degree() * b.degree()) +
                            " exceeds cap " + std::to_string(degree_cap));
  if (b.is_rational()) return detail::combine_with_rational(op, a, b.rational_value(), opt);
  if (a.is_rational()) return detail::combine_with_rational(op, b, a.rational_value(), opt);

  IntPolynomial R = op == CombineOp::add
                        ? detail::resultant_sum_poly(a.min_poly(), b.min_poly())
                        : detail::resultant_prod_poly(a.min_poly(), b.min_poly());
  auto hint_at = [&](long bits) {
    mpfr_prec_t wp = mpfr_prec_t(bits) + 32;
    Ball av = a.value(bits), bv = b.value(bits);
    return op == CombineOp::add ? add(av, bv, wp) : mul(av, bv, wp);
  };
  return detail::alg_from_hint(R, hint_at, opt);
}

}  // namespace cfcert
