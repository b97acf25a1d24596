#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cfcert/cf.hpp"
#include "test_util.hpp"

using namespace cfcert;

namespace {

bool brackets(const RealBall& b, const mpq_class& lo, const mpq_class& hi) {
  return !(less(b, RealBall::from_mpq(lo, 96)) == Tri::yes) &&
         !(less(RealBall::from_mpq(hi, 96), b) == Tri::yes);
}

AlgebraicNumber sqrt2() { return mk_algebraic(IntPolynomial{-2, 0, 1}, LargestModulus{}); }

CFTrace run_constant(const AlgebraicNumber& a, int steps, mpfr_prec_t prec) {
  CFTrace t = cf_begin();
  for (int i = 0; i < steps; ++i) t = advance(t, a, prec);
  return t;
}

}  // namespace

TEST_CASE("all-ones quotients generate the Fibonacci convergents") {
  CFTrace t = run_constant(AlgebraicNumber::from_integer(1L), 21, 64);
  std::vector<long> fib{1, 1};
  for (int i = 2; i <= 21; ++i) fib.push_back(fib[i - 1] + fib[i - 2]);
  REQUIRE(t.states.size() == 22);
  REQUIRE(t.exact_active);
  for (int i = 0; i <= 21; ++i) {
    REQUIRE(t.states[i].q_exact->rational_value() == fib[i]);
    REQUIRE(t.states[i].q_ball.contains(mpq_class(fib[i]), 0));
    REQUIRE(t.states[i].abs_q.contains(mpq_class(fib[i])));
  }
  // p-sequence 0, 1, 1, 2, 3, 5, ...
  REQUIRE(t.states[0].p_exact->rational_value() == 0);
  for (int i = 1; i <= 21; ++i)
    REQUIRE(t.states[i].p_exact->rational_value() == fib[i - 1]);
  REQUIRE(t.monotone_upto == 21);  // 1 < 2 < 3 < 5 < ... from q_1 on
}

TEST_CASE("determinant identity on the exact path") {
  CFTrace t = run_constant(sqrt2(), 6, 64);
  for (size_t n = 1; n < t.states.size(); ++n) {
    AlgebraicNumber det = exact_combine(
        CombineOp::add,
        exact_combine(CombineOp::mul, *t.states[n].p_exact, *t.states[n - 1].q_exact),
        negate(exact_combine(CombineOp::mul, *t.states[n - 1].p_exact, *t.states[n].q_exact)));
    REQUIRE(det.is_rational());
    REQUIRE(det.rational_value() == ((n % 2 == 1) ? 1 : -1));
  }
}

TEST_CASE("sqrt2 quotients: hand-computed convergents") {
  CFTrace t = run_constant(sqrt2(), 3, 64);
  // q: 1, sqrt2, 3, 4*sqrt2
  REQUIRE(t.states[2].q_exact->is_rational());
  REQUIRE(t.states[2].q_exact->rational_value() == 3);
  REQUIRE(t.states[3].q_exact->min_poly() == IntPolynomial{-32, 0, 1});
  REQUIRE(t.states[3].q_ball.real().is_positive());
  // exact values live inside the ball companions
  for (size_t n = 0; n < t.states.size(); ++n)
    REQUIRE(certainly_intersect(t.states[n].q_exact->value(128), t.states[n].q_ball));
  REQUIRE(t.monotone_upto == 3);
}

TEST_CASE("single quotient values") {
  CFTrace t5 = run_constant(AlgebraicNumber::from_integer(5L), 1, 64);
  REQUIRE(t5.value.contains(mpq_class(1, 5), 0));

  AlgebraicNumber phi = mk_algebraic(IntPolynomial{-1, -1, 1}, LargestReal{});
  CFTrace tphi = run_constant(phi, 1, 64);
  // 1/phi = 0.6180339887...
  RealBall v = tphi.value.real();
  REQUIRE(v.upper() > Dyadic::from_mpq(mpq_class(618033, 1000000), 64, MPFR_RNDN));
  REQUIRE(v.lower() < Dyadic::from_mpq(mpq_class(618034, 1000000), 64, MPFR_RNDN));
}

TEST_CASE("tail error bound: Fibonacci at N=4") {
  CFTrace t = run_constant(AlgebraicNumber::from_integer(1L), 6, 64);
  TailBound tb = tail_error_bound(t, 4);
  REQUIRE_FALSE(tb.conditional);
  RealBall lin = exp2(tb.log2_bound, 96);
  REQUIRE(lin.contains(mpq_class(1, 40)));  // q_4 = 5, q_5 = 8
  // true error |1/phi - p_4/q_4| = |1/phi - 3/5| ~ 0.0180 < 0.025
}

TEST_CASE("tail error bound: sqrt2 at N=2 and the degenerate N=0") {
  CFTrace t = run_constant(sqrt2(), 3, 64);
  TailBound tb = tail_error_bound(t, 2);
  REQUIRE_FALSE(tb.conditional);  // sqrt2 certified real >= 1
  RealBall lin = exp2(tb.log2_bound, 96);
  // 1/(|q_3||q_2|) = 1/(12 sqrt2) = 0.0589255...
  REQUIRE(brackets(lin, mpq_class(589255, 10000000), mpq_class(589256, 10000000)));

  TailBound tb0 = tail_error_bound(t, 0);
  RealBall lin0 = exp2(tb0.log2_bound, 96);  // 1/|q_1| = 1/sqrt2
  REQUIRE(brackets(lin0, mpq_class(7071067, 10000000), mpq_class(7071068, 10000000)));
}

TEST_CASE("limit enclosure converges to the periodic fixed point") {
  // [0; sqrt2, sqrt2, ...] is the positive root 0.51763809... of x^4-4x^2+1.
  CFTrace t = run_constant(sqrt2(), 30, 256);
  Ball lim = limit_enclosure(t, 256);
  auto roots = isolate_roots(IntPolynomial{1, 0, -4, 0, 1}, Dyadic::pow2(-60));
  REQUIRE(roots.size() == 4);
  REQUIRE(certainly_intersect(lim, roots[2]));
  REQUIRE(lim.rad < Dyadic::pow2(-40));
}

TEST_CASE("limit enclosure radius shrinks as the trace grows") {
  AlgebraicNumber one = AlgebraicNumber::from_integer(1L);
  CFTrace t = run_constant(one, 5, 64);
  Dyadic prev = limit_enclosure(t, 64).rad;
  for (int n = 6; n <= 12; ++n) {
    t = advance(t, one, 64);
    Dyadic cur = limit_enclosure(t, 64).rad;
    REQUIRE(!(prev < cur));
    prev = cur;
  }
  Ball lim = limit_enclosure(t, 64);
  REQUIRE(lim.contains(mpq_class(1, 2), 0) == false);
  // encloses 1/phi
  REQUIRE(lim.real().upper() > Dyadic::from_mpq(mpq_class(618033, 1000000), 64, MPFR_RNDN));
  REQUIRE(lim.real().lower() < Dyadic::from_mpq(mpq_class(618034, 1000000), 64, MPFR_RNDN));
}

TEST_CASE("vanishing convergent raises QNearZero") {
  AlgebraicNumber i = mk_algebraic(IntPolynomial{1, 0, 1}, LargestModulus{});
  CFTrace t = cf_begin();
  t = advance(t, i, 64);
  REQUIRE_THROWS_AS(advance(t, i, 64), QNearZero);  // q_2 = i*i + 1 = 0
}

TEST_CASE("non-increasing |q| stops the certified chain") {
  AlgebraicNumber i = mk_algebraic(IntPolynomial{1, 0, 1}, LargestModulus{});
  AlgebraicNumber twoi = exact_combine(CombineOp::mul, i, AlgebraicNumber::from_integer(2L));
  CFTrace t = cf_begin();
  t = advance(t, i, 64);
  t = advance(t, twoi, 64);  // q_2 = 2i*i + 1 = -1, |q_2| = |q_1| = 1
  REQUIRE(t.monotone_upto == 1);
  REQUIRE_THROWS_AS(tail_error_bound(t, 1), MonotonicityNotCertified);
  TailBound tb0 = tail_error_bound(t, 0);
  REQUIRE(tb0.conditional);  // i is not a real quotient
  REQUIRE(tb0.log2_bound.contains(mpq_class(0)));
}

TEST_CASE("relative precision target is reported") {
  CFTrace t = run_constant(sqrt2(), 4, 128);
  const ConvergentState& s = t.states.back();
  REQUIRE(s.rel_target_met);
  Dyadic m = Dyadic::hypot(s.q_ball.re, s.q_ball.im, 64, MPFR_RNDU);
  REQUIRE(s.q_ball.rad <= m.mul_2si(-64));
}

TEST_CASE("advance is deterministic and does not mutate its input") {
  CFTrace base = run_constant(sqrt2(), 3, 64);
  Dyadic mid_before = base.value.re;
  CFTrace a = advance(base, sqrt2(), 64);
  CFTrace b = advance(base, sqrt2(), 64);
  REQUIRE(base.value.re == mid_before);
  REQUIRE(a.value.re == b.value.re);
  REQUIRE(a.value.rad == b.value.rad);
  REQUIRE(a.states.back().abs_q.mid == b.states.back().abs_q.mid);
}
