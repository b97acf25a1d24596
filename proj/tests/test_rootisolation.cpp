#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cfcert/rootisolation.hpp"
#include "test_util.hpp"

using namespace cfcert;

namespace {

// Directed bracket of n^(1/k) at 512 bits, certainly containing the true root.
std::pair<Dyadic, Dyadic> root_bracket(unsigned long n, unsigned long k) {
  Dyadic lo(512), hi(512);
  Dyadic nn = Dyadic::from_long(static_cast<long>(n));
  mpfr_rootn_ui(lo.raw(), nn.raw(), k, MPFR_RNDD);
  mpfr_rootn_ui(hi.raw(), nn.raw(), k, MPFR_RNDU);
  return {lo, hi};
}

bool ball_meets_real_bracket(const Ball& b, const Dyadic& lo, const Dyadic& hi) {
  if (!b.imag().contains(mpq_class(0))) return false;
  RealBall re = b.real();
  return !(re.upper() < lo || hi < re.lower());
}

}  // namespace

TEST_CASE("quadratic roots with certified disks") {
  IntPolynomial f{-2, 0, 1};  // x^2 - 2
  auto roots = isolate_roots(f, Dyadic::pow2(-80));
  REQUIRE(roots.size() == 2);
  REQUIRE(certainly_disjoint(roots[0], roots[1]));
  for (const auto& r : roots) REQUIRE(r.rad <= Dyadic::pow2(-80));
  auto [lo, hi] = root_bracket(2, 2);
  REQUIRE(ball_meets_real_bracket(roots[1], lo, hi));
  REQUIRE(ball_meets_real_bracket(roots[0], lo.neg(), hi.neg()));
  // Sorted by real part.
  REQUIRE(roots[0].re < roots[1].re);
}

TEST_CASE("imaginary pair") {
  IntPolynomial f{1, 0, 1};  // x^2 + 1
  auto roots = isolate_roots(f, Dyadic::pow2(-64));
  REQUIRE(roots.size() == 2);
  REQUIRE(roots[0].contains(0, -1));
  REQUIRE(roots[1].contains(0, 1));
}

TEST_CASE("products of linear factors find exact integers") {
  IntPolynomial p{1};
  for (long k = 1; k <= 10; ++k) p = p * IntPolynomial::linear_root(k);
  auto roots = isolate_roots(p, Dyadic::pow2(-60));
  REQUIRE(roots.size() == 10);
  for (long k = 1; k <= 10; ++k)
    REQUIRE(roots[static_cast<size_t>(k - 1)].contains(k, 0));
}

TEST_CASE("repeated factors are reduced before isolation") {
  IntPolynomial f{-2, 0, 1};
  IntPolynomial g{-1, 1};
  auto roots = isolate_roots(f * f * g, Dyadic::pow2(-64));
  REQUIRE(roots.size() == 3);
  REQUIRE(roots[1].contains(1, 0));
}

TEST_CASE("zero roots are exact") {
  IntPolynomial f{0, -2, 0, 1};  // x(x^2 - 2)
  auto roots = isolate_roots(f, Dyadic::pow2(-64));
  REQUIRE(roots.size() == 3);
  REQUIRE(roots[1].is_exact());
  REQUIRE(roots[1].contains(0, 0));
}

TEST_CASE("cube root of two and its conjugate pair") {
  IntPolynomial f{-2, 0, 0, 1};
  auto roots = isolate_roots(f, Dyadic::pow2(-100));
  REQUIRE(roots.size() == 3);
  auto [lo, hi] = root_bracket(2, 3);
  // The real root is the one with largest real part after sorting.
  REQUIRE(ball_meets_real_bracket(roots[2], lo, hi));
  // All roots have modulus 2^(1/3): |z|^3 must enclose 2.
  for (const auto& r : roots) {
    RealBall a = r.abs(128);
    RealBall cube = mul(mul(a, a, 128), a, 128);
    REQUIRE(cube.contains(mpq_class(2)));
  }
  // The conjugate pair straddles the real axis.
  REQUIRE(roots[0].im.sgn() * roots[1].im.sgn() == -1);
}

TEST_CASE("cyclotomic roots stay on the unit circle") {
  IntPolynomial f{1, 1, 1, 1, 1};
  auto roots = isolate_roots(f, Dyadic::pow2(-90));
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) REQUIRE(r.abs(128).contains(mpq_class(1)));
}

TEST_CASE("deep refinement and relative targets") {
  IntPolynomial f{-2, 0, 1};
  auto roots = isolate_roots(f, Dyadic::pow2(-200));
  REQUIRE(roots[1].rad <= Dyadic::pow2(-200));
  auto [lo, hi] = root_bracket(2, 2);
  REQUIRE(ball_meets_real_bracket(roots[1], lo, hi));

  Ball refined = refine_root(f, roots[1], abs_stop(Dyadic::pow2(-300)));
  REQUIRE(refined.rad <= Dyadic::pow2(-300));
  REQUIRE(ball_meets_real_bracket(refined, lo, hi));
  REQUIRE(certainly_intersect(refined, roots[1]));
}

TEST_CASE("huge magnitudes isolate at relative accuracy") {
  // x^2 - 2^1001: roots +-2^500 * sqrt(2).
  std::vector<mpz_class> c{-(mpz_class(1) << 1001), 0, 1};
  IntPolynomial f(std::move(c));
  auto roots = isolate_roots_rel(f, 120);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    Dyadic m = Dyadic::hypot(r.re, r.im, 64, MPFR_RNDD);
    REQUIRE(r.rad <= m.mul_2si(-120));
  }
  // |root|^2 = 2^1001 exactly.
  RealBall sq = mul(roots[1].abs(1100), roots[1].abs(1100), 1100);
  REQUIRE(sq.contains(mpq_class(mpz_class(1) << 1001)));
}

TEST_CASE("linear polynomials take the exact rational path") {
  mpz_class big = mpz_class(1) << 1000;
  std::vector<mpz_class> c{-big, 3};  // 3x - 2^1000
  auto roots = isolate_roots_rel(IntPolynomial(std::move(c)), 80);
  REQUIRE(roots.size() == 1);
  REQUIRE(roots[0].contains(mpq_class(big, 3), 0));
}

TEST_CASE("precision cap is honored") {
  IntPolynomial f{-2, 0, 1};
  REQUIRE_THROWS_AS(isolate_roots(f, Dyadic::pow2(-500), 128), PrecisionExhausted);
}

TEST_CASE("constants and zero input") {
  REQUIRE(isolate_roots(IntPolynomial{7}, Dyadic::pow2(-10)).empty());
  REQUIRE_THROWS_AS(isolate_roots(IntPolynomial{}, Dyadic::pow2(-10)), ZeroInput);
}

TEST_CASE("isolation is deterministic") {
  IntPolynomial f{3, -5, 0, 2, 1};
  auto a = isolate_roots(f, Dyadic::pow2(-70));
  auto b = isolate_roots(f, Dyadic::pow2(-70));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].re == b[i].re);
    REQUIRE(a[i].im == b[i].im);
    REQUIRE(a[i].rad == b[i].rad);
  }
}
