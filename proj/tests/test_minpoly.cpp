#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "cfcert/minpoly.hpp"
#include "test_util.hpp"

using namespace cfcert;

TEST_CASE("irreducibility of known irreducibles") {
  REQUIRE(is_irreducible(IntPolynomial{-2, 0, 1}));      // x^2 - 2
  REQUIRE(is_irreducible(IntPolynomial{1, 0, 1}));       // x^2 + 1
  REQUIRE(is_irreducible(IntPolynomial{-2, 0, 0, 1}));   // x^3 - 2
  REQUIRE(is_irreducible(IntPolynomial{-1, -1, 1}));     // x^2 - x - 1
  REQUIRE(is_irreducible(IntPolynomial{1, 1, 1, 1, 1})); // 5th cyclotomic
  REQUIRE(is_irreducible(IntPolynomial{-3, 2}));         // 2x - 3
}

TEST_CASE("irreducibility needs the cluster search when the sieve is blind") {
  // Both split modulo every prime, so no degree sieve can settle them; the
  // conjugation-closed subset search must reject every proper divisor.
  REQUIRE(is_irreducible(IntPolynomial{1, 0, -1, 0, 1}));   // x^4 - x^2 + 1
  REQUIRE(is_irreducible(IntPolynomial{1, 0, -10, 0, 1}));  // x^4 - 10x^2 + 1
}

TEST_CASE("reducible inputs are recognized") {
  IntPolynomial a{-2, 0, 1}, b{-3, 1}, c{1, 0, 1};
  REQUIRE_FALSE(is_irreducible(a * b));
  REQUIRE_FALSE(is_irreducible(IntPolynomial{-4, 0, 1}));       // (x-2)(x+2)
  REQUIRE_FALSE(is_irreducible(a * c));
  REQUIRE_FALSE(is_irreducible(IntPolynomial{-4, 0, 0, 0, 1})); // x^4 - 4
  REQUIRE_FALSE(is_irreducible(a * a));                         // repeated
}

TEST_CASE("minimal polynomial of marked roots of products") {
  IntPolynomial f{-2, 0, 1};   // x^2 - 2
  IntPolynomial g{-1, 1};      // x - 1
  IntPolynomial p = f * g;
  auto roots = isolate_roots(p, Dyadic::pow2(-60));
  REQUIRE(roots.size() == 3);
  // Sorted roots: -sqrt2, 1, sqrt2.
  REQUIRE(min_poly_from_root(p, roots[0]).poly == f);
  REQUIRE(min_poly_from_root(p, roots[1]).poly == g.primitive());
  REQUIRE(min_poly_from_root(p, roots[2]).poly == f);
}

TEST_CASE("minimal polynomial splits quartics correctly") {
  IntPolynomial p{-4, 0, 0, 0, 1};  // x^4 - 4 = (x^2-2)(x^2+2)
  auto roots = isolate_roots(p, Dyadic::pow2(-60));
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) {
    MinPolyResult mp = min_poly_from_root(p, r);
    if (r.imag().contains(mpq_class(0)))
      REQUIRE(mp.poly == IntPolynomial{-2, 0, 1});
    else
      REQUIRE(mp.poly == IntPolynomial{2, 0, 1});
  }
}

TEST_CASE("non-monic factors are reconstructed") {
  IntPolynomial f{-3, 2};     // 2x - 3
  IntPolynomial g{-2, 0, 1};  // x^2 - 2
  IntPolynomial p = f * g;
  auto roots = isolate_roots(p, Dyadic::pow2(-60));
  // Roots sorted: -sqrt2, sqrt2 and 3/2 interleaved: -1.414, 1.414, 1.5.
  REQUIRE(roots.size() == 3);
  REQUIRE(min_poly_from_root(p, roots[2]).poly == f);
  REQUIRE(min_poly_from_root(p, roots[1]).poly == g);
}

TEST_CASE("repeated roots reduce to the squarefree part") {
  IntPolynomial f{-2, 1};  // x - 2
  IntPolynomial g{-3, 1};
  IntPolynomial p = f * f * g;
  auto roots = isolate_roots(p, Dyadic::pow2(-40));
  REQUIRE(roots.size() == 2);
  REQUIRE(min_poly_from_root(p, roots[0]).poly == f);
}

TEST_CASE("every root of a product of irreducibles recovers its factor") {
  std::vector<IntPolynomial> factors = {
      IntPolynomial{-2, 0, 1},    // x^2 - 2
      IntPolynomial{-3, 0, 1},    // x^2 - 3
      IntPolynomial{-1, -1, 1},   // x^2 - x - 1
      IntPolynomial{-2, 0, 0, 1}  // x^3 - 2
  };
  IntPolynomial p{1};
  for (const auto& f : factors) p = p * f;
  auto roots = isolate_roots(p, Dyadic::pow2(-70));
  REQUIRE(roots.size() == 9);
  std::map<std::string, int> counts;
  for (const auto& r : roots) {
    MinPolyResult mp = min_poly_from_root(p, r);
    counts[mp.poly.to_string()]++;
    // The isolator must sit inside (or equal) one original root ball.
    bool meets = false;
    for (const auto& orig : roots)
      if (certainly_intersect(mp.isolator, orig)) meets = true;
    REQUIRE(meets);
  }
  REQUIRE(counts[factors[0].to_string()] == 2);
  REQUIRE(counts[factors[1].to_string()] == 2);
  REQUIRE(counts[factors[2].to_string()] == 2);
  REQUIRE(counts[factors[3].to_string()] == 3);
}

TEST_CASE("huge exact roots") {
  mpz_class big = mpz_class(1) << 5000;
  IntPolynomial p = IntPolynomial::linear_root(big);
  auto roots = isolate_roots_rel(p, 64);
  MinPolyResult mp = min_poly_from_root(p, roots[0]);
  REQUIRE(mp.poly == p);
  REQUIRE(mp.isolator.contains(mpq_class(big), 0));
}

TEST_CASE("search budget raises the undecided error") {
  MinPolyOptions opt;
  opt.node_budget = 1;
  IntPolynomial p{1, 0, -10, 0, 1};  // requires the search (sieve-blind)
  auto roots = isolate_roots(p, Dyadic::pow2(-40));
  REQUIRE_THROWS_AS(min_poly_from_root(p, roots[0], opt), IrreducibilityUndecided);
}

TEST_CASE("minimal polynomial extraction is deterministic") {
  IntPolynomial p = IntPolynomial{-2, 0, 1} * IntPolynomial{-1, -1, 1};
  auto r1 = isolate_roots(p, Dyadic::pow2(-50));
  auto r2 = isolate_roots(p, Dyadic::pow2(-50));
  MinPolyResult a = min_poly_from_root(p, r1[3]);
  MinPolyResult b = min_poly_from_root(p, r2[3]);
  REQUIRE(a.poly == b.poly);
  REQUIRE(a.isolator.re == b.isolator.re);
  REQUIRE(a.isolator.rad == b.isolator.rad);
}
