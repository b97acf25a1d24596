#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cfcert/intpoly.hpp"
#include "test_util.hpp"

using namespace cfcert;

namespace {

IntPolynomial random_poly(Rng& rng, long deg, long mag) {
  std::vector<mpz_class> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = rng.range(-mag, mag);
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(std::move(c));
}

// Independent oracle: resultant as the Sylvester matrix determinant,
// computed by exact rational Gaussian elimination.
mpq_class sylvester_resultant(const IntPolynomial& f, const IntPolynomial& g) {
  long m = f.degree(), n = g.degree();
  size_t dim = static_cast<size_t>(m + n);
  std::vector<std::vector<mpq_class>> a(dim, std::vector<mpq_class>(dim, 0));
  for (long row = 0; row < n; ++row)
    for (long j = 0; j <= m; ++j)
      a[static_cast<size_t>(row)][static_cast<size_t>(row + j)] =
          f[static_cast<size_t>(m - j)];
  for (long row = 0; row < m; ++row)
    for (long j = 0; j <= n; ++j)
      a[static_cast<size_t>(n + row)][static_cast<size_t>(row + j)] =
          g[static_cast<size_t>(n - j)];
  mpq_class det = 1;
  for (size_t col = 0; col < dim; ++col) {
    size_t piv = col;
    while (piv < dim && a[piv][col] == 0) ++piv;
    if (piv == dim) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < dim; ++r) {
      if (a[r][col] == 0) continue;
      mpq_class factor = a[r][col] / a[col][col];
      for (size_t cc = col; cc < dim; ++cc) a[r][cc] -= factor * a[col][cc];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("polynomial ring operations") {
  IntPolynomial f{-2, 0, 1};  // x^2 - 2
  IntPolynomial g{-1, 1};     // x - 1
  REQUIRE((f * g).to_string() == "x^3 - x^2 - 2*x + 2");
  REQUIRE((f + g).to_string() == "x^2 + x - 3");
  REQUIRE((f - g).to_string() == "x^2 - x - 1");
  REQUIRE(f.derivative().to_string() == "2*x");
  REQUIRE((-f).to_string() == "-x^2 + 2");
  REQUIRE(f.eval_mpz(3) == 7);
  REQUIRE(f.eval_mpq(mpq_class(1, 2)) == mpq_class(-7, 4));
  REQUIRE(IntPolynomial({2, 4, 6}).content() == 2);
  REQUIRE(IntPolynomial({2, 4, -6}).primitive().to_string() == "3*x^2 - 2*x - 1");
  REQUIRE(IntPolynomial{}.is_zero());
  REQUIRE((f - f).is_zero());
}

TEST_CASE("substitution transforms agree with evaluation") {
  Rng rng(11);
  for (int iter = 0; iter < 80; ++iter) {
    IntPolynomial p = random_poly(rng, rng.range(1, 5), 12);
    mpq_class by = rng.rational(9);
    mpq_class x1 = rng.rational(7), x2 = rng.rational(7);

    IntPolynomial sh = p.shift_root(by);
    // sh(x + by) is a constant multiple of p(x): cross-check at two points.
    REQUIRE(sh.eval_mpq(x1 + by) * p.eval_mpq(x2) == sh.eval_mpq(x2 + by) * p.eval_mpq(x1));
    REQUIRE(sh.degree() == p.degree());

    if (by != 0) {
      IntPolynomial sc = p.scale_root(by);
      REQUIRE(sc.eval_mpq(x1 * by) * p.eval_mpq(x2) == sc.eval_mpq(x2 * by) * p.eval_mpq(x1));
      REQUIRE(sc.degree() == p.degree());
    }

    IntPolynomial nv = p.negate_var();
    REQUIRE(nv.eval_mpq(-x1) == p.eval_mpq(x1));

    if (p[0] != 0 && x1 != 0) {
      IntPolynomial rv = p.reverse();
      mpq_class xn = 1;  // x1^deg(p)
      for (long k = 0; k < p.degree(); ++k) xn *= x1;
      REQUIRE(rv.eval_mpq(x1) == xn * p.eval_mpq(1 / x1));
    }
  }
}

TEST_CASE("exact division") {
  Rng rng(12);
  for (int iter = 0; iter < 60; ++iter) {
    IntPolynomial f = random_poly(rng, rng.range(0, 4), 10);
    IntPolynomial g = random_poly(rng, rng.range(1, 4), 10);
    auto q = exact_divide(f * g, g);
    REQUIRE(q.has_value());
    REQUIRE(*q == f);
    auto bad = exact_divide(f * g + IntPolynomial{1}, g);
    REQUIRE_FALSE(bad.has_value());
  }
}

TEST_CASE("gcd and squarefree part") {
  IntPolynomial f{-2, 0, 1};  // x^2 - 2
  IntPolynomial g{-3, 1};     // x - 3
  IntPolynomial p = f * f * g;
  IntPolynomial sf = squarefree_part(p);
  REQUIRE(sf == (f * g).primitive());
  REQUIRE(gcd(p, p.derivative()) == f.primitive());

  Rng rng(13);
  for (int iter = 0; iter < 40; ++iter) {
    IntPolynomial a = random_poly(rng, rng.range(1, 3), 8);
    IntPolynomial b = random_poly(rng, rng.range(1, 3), 8);
    IntPolynomial h = random_poly(rng, rng.range(1, 2), 8);
    IntPolynomial d = gcd(a * h, b * h);
    REQUIRE(exact_divide(d, h.primitive()).has_value());
    REQUIRE(exact_divide(a * h, d).has_value());
    REQUIRE(exact_divide(b * h, d).has_value());

    IntPolynomial s = squarefree_part(a * a * b);
    REQUIRE(exact_divide(a * a * b, s).has_value());
    REQUIRE(gcd(s, s.derivative()).degree() == 0);
  }
}

TEST_CASE("resultant matches the Sylvester determinant oracle") {
  Rng rng(14);
  for (int iter = 0; iter < 120; ++iter) {
    IntPolynomial f = random_poly(rng, rng.range(1, 5), 15);
    IntPolynomial g = random_poly(rng, rng.range(1, 5), 15);
    mpq_class oracle = sylvester_resultant(f, g);
    REQUIRE(oracle.get_den() == 1);
    REQUIRE(resultant(f, g) == oracle.get_num());
  }
}

TEST_CASE("resultant special values") {
  IntPolynomial f{-2, 0, 1};             // x^2 - 2
  IntPolynomial g{-3, 0, 1};             // x^2 - 3
  REQUIRE(resultant(f, g) == 1);         // (2-3)(2-3)
  IntPolynomial lin{-4, 1};              // x - 4
  REQUIRE(resultant(lin, f) == 14);      // f(4)
  REQUIRE(resultant(f, lin) == 14);      // lc(f)^1 * prod lin(root) = (4^2-2)
  // Large-coefficient CRT path: Res(x - 1, x - 2^500) = 1 - 2^500.
  mpz_class big = mpz_class(1) << 500;
  IntPolynomial h1 = IntPolynomial::linear_root(big);
  IntPolynomial h2{-1, 1};
  REQUIRE(resultant(h2, h1) == 1 - big);
  REQUIRE(resultant(h1, h2) == big - 1);
  // Common factor: resultant vanishes.
  REQUIRE(resultant(f * lin, f) == 0);
}

TEST_CASE("factor degree sieve") {
  // x^2 + 1 is irreducible mod any prime p = 3 mod 4; the sieve must rule
  // out degree-1 factors.
  auto bits = possible_factor_degrees(IntPolynomial{1, 0, 1});
  REQUIRE(bits[0]);
  REQUIRE(bits[2]);
  REQUIRE_FALSE(bits[1]);
  REQUIRE_FALSE(bits[3]);

  // (x^2+1)(x-1): degrees {0,1,2,3} all realizable.
  auto bits2 = possible_factor_degrees(IntPolynomial{1, 0, 1} * IntPolynomial{-1, 1});
  REQUIRE(bits2[0]);
  REQUIRE(bits2[1]);
  REQUIRE(bits2[2]);
  REQUIRE(bits2[3]);

  // x^4 + 1 factors into two quadratics mod every odd prime: degree 1 and 3
  // factors are impossible.
  auto bits3 = possible_factor_degrees(IntPolynomial{1, 0, 0, 0, 1});
  REQUIRE(bits3[0]);
  REQUIRE(bits3[2]);
  REQUIRE(bits3[4]);
  REQUIRE_FALSE(bits3[1]);
  REQUIRE_FALSE(bits3[3]);
}

TEST_CASE("sign at dyadic points and ball evaluation") {
  IntPolynomial f{-2, 0, 1};  // x^2 - 2
  REQUIRE(f.sign_at(Dyadic::from_long(1)) < 0);
  REQUIRE(f.sign_at(Dyadic::from_long(2)) > 0);
  REQUIRE(f.sign_at(Dyadic::from_double(1.5)) > 0);
  REQUIRE(IntPolynomial{0, 1}.sign_at(Dyadic::from_long(0)) == 0);

  Rng rng(15);
  for (int iter = 0; iter < 60; ++iter) {
    IntPolynomial p = random_poly(rng, rng.range(1, 4), 10);
    mpq_class xr = rng.rational(8), xi = rng.rational(8);
    Ball z{Dyadic::from_mpq(xr, 80, MPFR_RNDN), Dyadic::from_mpq(xi, 80, MPFR_RNDN),
           Dyadic::pow2(-50)};
    // Exact evaluation of p at the rational complex point.
    mpq_class vr = 0, vi = 0;
    for (long i = p.degree(); i >= 0; --i) {
      mpq_class nr = vr * xr - vi * xi + p[static_cast<size_t>(i)];
      mpq_class ni = vr * xi + vi * xr;
      vr = nr;
      vi = ni;
    }
    REQUIRE(p.eval_ball(z, 80).contains(vr, vi));

    mpq_class x = rng.rational(9);
    RealBall rb{Dyadic::from_mpq(x, 80, MPFR_RNDN), Dyadic::pow2(-50)};
    mpq_class shifted = x + mpq_class(1, 1000);
    if (rb.contains(shifted)) {
      REQUIRE(p.eval_real(rb, 80).contains(p.eval_mpq(shifted)));
    }
    REQUIRE(p.eval_real(rb, 80).contains(p.eval_mpq(x)));
  }
}
