#include <catch2/catch_amalgamated.hpp>

#include "cfcert/ball.hpp"
#include "cfcert/dyadic.hpp"
#include "cfcert/errors.hpp"
#include "test_util.hpp"

using namespace cfcert;

namespace {

// Ball certainly containing [c - r, c + r], exact rational bounds.
RealBall make_ball(const mpq_class& c, const mpq_class& r, mpfr_prec_t p) {
  Dyadic lo = Dyadic::from_mpq(c - r, p, MPFR_RNDD);
  Dyadic hi = Dyadic::from_mpq(c + r, p, MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, p);
}

mpq_class point_inside(Rng& rng, const mpq_class& c, const mpq_class& r) {
  mpq_class t(rng.range(-16, 16), 16);
  return c + t * r;
}

}  // namespace

TEST_CASE("dyadic exact roundtrips and comparisons") {
  mpz_class big("123456789012345678901234567890");
  Dyadic d = Dyadic::from_mpz(big);
  REQUIRE(d.to_mpq() == mpq_class(big));
  REQUIRE(Dyadic::from_long(-7).to_mpq() == mpq_class(-7));
  REQUIRE(Dyadic::pow2(-3).to_mpq() == mpq_class(1, 8));
  REQUIRE(Dyadic::pow2(10).to_mpq() == mpq_class(1024));

  Dyadic a = Dyadic::from_long(3), b = Dyadic::from_long(4);
  REQUIRE(a < b);
  REQUIRE(b > a);
  REQUIRE(a == Dyadic::from_long(3));
  REQUIRE(a.mul_2si(5).to_mpq() == mpq_class(96));
  REQUIRE(a.neg().to_mpq() == mpq_class(-3));
  REQUIRE(a.neg().abs().to_mpq() == mpq_class(3));
  REQUIRE(Dyadic::from_long(12).exponent() == 4);  // 8 <= 12 < 16
}

TEST_CASE("real ball arithmetic contains exact rational results") {
  Rng rng(1);
  for (int iter = 0; iter < 300; ++iter) {
    mpfr_prec_t p = 64 + 32 * (iter % 3);
    mpq_class c1 = rng.rational(50), c2 = rng.rational(50);
    mpq_class r1(rng.range(0, 9), rng.range(1, 40));
    mpq_class r2(rng.range(0, 9), rng.range(1, 40));
    RealBall b1 = make_ball(c1, r1, p), b2 = make_ball(c2, r2, p);
    mpq_class x1 = point_inside(rng, c1, r1), x2 = point_inside(rng, c2, r2);
    REQUIRE(b1.contains(x1));
    REQUIRE(b2.contains(x2));

    REQUIRE(add(b1, b2, p).contains(x1 + x2));
    REQUIRE(sub(b1, b2, p).contains(x1 - x2));
    REQUIRE(mul(b1, b2, p).contains(x1 * x2));
    REQUIRE(neg(b1).contains(-x1));
    REQUIRE(abs(b1).contains(::abs(x1)));

    mpz_class s(rng.range(-30, 30));
    REQUIRE(mul_mpz(b1, s, p).contains(x1 * mpq_class(s)));
    REQUIRE(mul_pow2(b1, -5).contains(x1 / 32));
    REQUIRE(div_ui(b1, 7, p).contains(x1 / 7));

    bool b2_safe = !sub(b2, b2, p).contains(0) ? true : (c2 - r2 > 0 || c2 + r2 < 0);
    if (b2_safe && x2 != 0) {
      REQUIRE(div(b1, b2, p).contains(x1 / x2));
      REQUIRE(inv(b2, p).contains(1 / x2));
    }
  }
}

TEST_CASE("reciprocal of interval containing zero is rejected") {
  RealBall z = make_ball(mpq_class(0), mpq_class(1, 2), 64);
  REQUIRE_THROWS_AS(inv(z, 64), ZeroInput);
  RealBall fine = make_ball(mpq_class(3), mpq_class(1, 2), 64);
  REQUIRE_NOTHROW(inv(fine, 64));
}

TEST_CASE("log2 and exp2 enclosures bracket directed high-precision values") {
  Rng rng(2);
  for (int iter = 0; iter < 120; ++iter) {
    mpq_class c = rng.rational(60);
    c = ::abs(c) + 1;
    mpq_class r(1, rng.range(2, 100));
    RealBall b = make_ball(c, r, 96);
    mpq_class x = point_inside(rng, c, r);
    RealBall lb = log2(b, 96);
    Dyadic xd = Dyadic::from_mpq(x, 512, MPFR_RNDN);
    Dyadic lo = Dyadic::log2(xd, 480, MPFR_RNDD);
    Dyadic hi = Dyadic::log2(xd, 480, MPFR_RNDU);
    // xd itself is within 2^-460 of x; the log2 bracket of xd must land
    // inside (an overlap of) the certified enclosure of log2 over b.
    REQUIRE(overlaps(lb, lo, hi));

    RealBall eb = exp2(log2(b, 96), 96);
    // exp2(log2(b)) must still cover x.
    REQUIRE(eb.contains(x));
  }
}

TEST_CASE("complex ball arithmetic contains exact rational points") {
  Rng rng(3);
  for (int iter = 0; iter < 250; ++iter) {
    mpfr_prec_t p = 64;
    mpq_class ar = rng.rational(30), ai = rng.rational(30);
    mpq_class br = rng.rational(30), bi = rng.rational(30);
    Ball A{Dyadic::from_mpq(ar, p, MPFR_RNDN), Dyadic::from_mpq(ai, p, MPFR_RNDN),
           Dyadic::pow2(-40)};
    Ball B{Dyadic::from_mpq(br, p, MPFR_RNDN), Dyadic::from_mpq(bi, p, MPFR_RNDN),
           Dyadic::pow2(-40)};
    // The midpoints are within 2^-60 of the rational points, well under rad.
    REQUIRE(A.contains(ar, ai));
    REQUIRE(B.contains(br, bi));

    Ball S = add(A, B, p);
    REQUIRE(S.contains(ar + br, ai + bi));
    Ball D = sub(A, B, p);
    REQUIRE(D.contains(ar - br, ai - bi));
    Ball M = mul(A, B, p);
    REQUIRE(M.contains(ar * br - ai * bi, ar * bi + ai * br));
    REQUIRE(neg(A).contains(-ar, -ai));
    REQUIRE(A.conj().contains(ar, -ai));
    REQUIRE(add_mpz(A, mpz_class(5), p).contains(ar + 5, ai));
    REQUIRE(mul_pow2(A, 3).contains(8 * ar, 8 * ai));

    mpq_class n2 = br * br + bi * bi;
    if (n2 > mpq_class(1, 100)) {
      Ball I = inv(B, p);
      REQUIRE(I.contains(br / n2, -bi / n2));
      Ball Q = div(A, B, p);
      mpq_class qr = (ar * br + ai * bi) / n2;
      mpq_class qi = (ai * br - ar * bi) / n2;
      REQUIRE(Q.contains(qr, qi));
    }

    // |z| enclosure: square it and compare against |z|^2 exactly.
    RealBall az = A.abs(p);
    REQUIRE(mul(az, az, p).contains(ar * ar + ai * ai));
  }
}

TEST_CASE("complex reciprocal of disk containing zero is rejected") {
  Ball z = Ball::exact_long(0);
  Ball w{Dyadic::from_long(0), Dyadic::from_long(0), Dyadic::pow2(-2)};
  REQUIRE_THROWS_AS(inv(z, 64), ZeroInput);
  REQUIRE_THROWS_AS(inv(w, 64), ZeroInput);
  REQUIRE_NOTHROW(inv(Ball::exact_long(2, 1), 64));
}

TEST_CASE("certified order predicates") {
  RealBall a = make_ball(mpq_class(1), mpq_class(1, 4), 64);
  RealBall b = make_ball(mpq_class(2), mpq_class(1, 4), 64);
  RealBall c = make_ball(mpq_class(1), mpq_class(3, 4), 64);
  REQUIRE(less(a, b) == Tri::yes);
  REQUIRE(less(b, a) == Tri::no);
  REQUIRE(less(a, c) == Tri::undecided);
  REQUIRE(leq(a, b) == Tri::yes);
  REQUIRE(leq(b, a) == Tri::no);
}

TEST_CASE("integer detection inside intervals") {
  RealBall t = make_ball(mpq_class(3), mpq_class(1, 10), 64);
  mpz_class n;
  REQUIRE(t.contains_integer());
  REQUIRE(t.unique_integer(n));
  REQUIRE(n == 3);

  RealBall wide = make_ball(mpq_class(5, 2), mpq_class(3, 4), 64);
  REQUIRE(wide.contains_integer());
  REQUIRE_FALSE(wide.unique_integer(n));

  RealBall none = make_ball(mpq_class(5, 2), mpq_class(1, 4), 64);
  REQUIRE_FALSE(none.contains_integer());
}

TEST_CASE("disk geometry predicates") {
  Ball a{Dyadic::from_long(0), Dyadic::from_long(0), Dyadic::pow2(-2)};
  Ball b{Dyadic::from_long(1), Dyadic::from_long(0), Dyadic::pow2(-2)};
  Ball inner{Dyadic::from_double(0.05), Dyadic::from_long(0), Dyadic::pow2(-6)};
  REQUIRE(certainly_disjoint(a, b));
  REQUIRE_FALSE(certainly_disjoint(a, inner));
  REQUIRE(certainly_inside(inner, a));
  REQUIRE_FALSE(certainly_inside(a, inner));
  REQUIRE(certainly_intersect(a, inner));

  Ball touching{Dyadic::from_double(0.5), Dyadic::from_long(0), Dyadic::pow2(-2)};
  REQUIRE_FALSE(certainly_disjoint(a, touching));
}

TEST_CASE("hull and projections") {
  RealBall a = make_ball(mpq_class(1), mpq_class(1, 8), 64);
  RealBall b = make_ball(mpq_class(4), mpq_class(1, 8), 64);
  RealBall h = hull(a, b, 64);
  REQUIRE(h.contains(mpq_class(1)));
  REQUIRE(h.contains(mpq_class(4)));
  REQUIRE(h.contains(mpq_class(2)));

  Ball z{Dyadic::from_long(3), Dyadic::from_long(-2), Dyadic::pow2(-4)};
  REQUIRE(z.real().contains(mpq_class(3)));
  REQUIRE(z.imag().contains(mpq_class(-2)));
}

TEST_CASE("ball operations are deterministic") {
  auto run = [] {
    RealBall b = make_ball(mpq_class(7, 3), mpq_class(1, 97), 128);
    RealBall r = log2(mul(b, b, 128), 128);
    return r.mid.to_string() + "|" + r.rad.to_string();
  };
  REQUIRE(run() == run());
}
