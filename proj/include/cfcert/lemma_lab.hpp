#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfcert/profile.hpp"

namespace cfcert {

/// Reproducible collection of algebraic integers.  Every entry is the
/// largest-modulus root of a monic certified-irreducible polynomial drawn
/// uniformly with degree in [1, degree_max] and |coefficients| <= coeff_bound.
struct Corpus {
  std::uint64_t seed = 0;
  long degree_max = 0;
  long coeff_bound = 0;
  std::vector<AlgebraicNumber> entries;
};

namespace detail {

// splitmix64: seedable and platform-independent, so corpora replay exactly.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = next();
    while (v >= lim);
    return v % n;
  }
  long in_range(long lo, long hi) {  // inclusive both ends
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace detail

/// Draw `count` entries by rejection sampling: reducible draws, zero (the
/// degree-1 draw x), selector ties across conjugation classes (x^3 - 2), and
/// undecided irreducibility all redraw and count against the budget.
inline Corpus gen_corpus(std::uint64_t seed, long degree_max, long coeff_bound, long count) {
  if (degree_max < 1 || degree_max > 6)
    throw Error("gen_corpus: degree_max must be in [1, 6]");
  if (coeff_bound < 1) throw Error("gen_corpus: coeff_bound must be >= 1");
  if (count < 0) throw Error("gen_corpus: negative count");

  Corpus out{seed, degree_max, coeff_bound, {}};
  out.entries.reserve(static_cast<size_t>(count));
  detail::SplitMix64 rng(seed);
  long attempts = 0;
  const long budget = 64 * count + 256;
  while (static_cast<long>(out.entries.size()) < count) {
    if (++attempts > budget)
      throw GenerationBudgetExceeded("corpus generation: " + std::to_string(attempts - 1) +
                                     " draws produced only " +
                                     std::to_string(out.entries.size()) + " of " +
                                     std::to_string(count) + " entries");
    long deg = rng.in_range(1, degree_max);
    std::vector<mpz_class> c(static_cast<size_t>(deg) + 1);
    c[static_cast<size_t>(deg)] = 1;
    for (long i = 0; i < deg; ++i)
      c[static_cast<size_t>(i)] = rng.in_range(-coeff_bound, coeff_bound);
    IntPolynomial p(std::move(c));
    if (deg == 1 && p[0] == 0) continue;  // zero breaks the nonzero hypotheses
    try {
      AlgebraicNumber a = mk_algebraic(p, LargestModulus{}, {}, /*require_monic=*/true);
      // The minimal polynomial of the selected root has full degree exactly
      // when the draw was irreducible; anything smaller is a proper factor.
      if (a.degree() != deg) continue;
      out.entries.push_back(std::move(a));
    } catch (const SelectorAmbiguous&) {
      continue;
    } catch (const IrreducibilityUndecided&) {
      continue;
    }
  }
  return out;
}

enum class LemmaId { L2, L3, L4, L5, T2 };

inline const char* to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L2: return "L2";
    case LemmaId::L3: return "L3";
    case LemmaId::L4: return "L4";
    case LemmaId::L5: return "L5";
    default: return "T2";
  }
}

/// Aggregate of one check over a corpus.  `failures` counts certified
/// violations (disjoint intervals ordered the wrong way) and must stay zero;
/// `undecided` counts cases where the enclosures could not settle the claim.
/// Margins are log2-scale enclosures selected by midpoint, kept as
/// diagnostics of how tight the corpus pushes each bound.
struct CheckReport {
  LemmaId lemma = LemmaId::L2;
  long cases = 0;
  long passes = 0;
  long undecided = 0;
  long failures = 0;
  std::optional<RealBall> min_margin;
  std::optional<RealBall> max_margin;
};

struct LemmaCheckOptions {
  mpfr_prec_t prec = 128;   // first-attempt profile precision
  long l4_cases = 200;      // random sum cases (pairs and triples)
  long l4_degree_cap = 64;  // cap on the degree product per sum
};

namespace detail {

inline void record_margin(CheckReport& r, const RealBall& m) {
  if (!r.min_margin || m.mid < r.min_margin->mid) r.min_margin = m;
  if (!r.max_margin || r.max_margin->mid < m.mid) r.max_margin = m;
}

inline RealBall interval_min(const RealBall& x, const RealBall& y, mpfr_prec_t p) {
  return RealBall::from_endpoints(Dyadic::min(x.lower(), y.lower()),
                                  Dyadic::min(x.upper(), y.upper()), p);
}

// Claim lo <= hi on enclosures: yes / certified violation / undecided.
inline Tri order_leg(const RealBall& lo, const RealBall& hi) {
  if (leq(lo, hi) == Tri::yes) return Tri::yes;
  if (less(hi, lo) == Tri::yes) return Tri::no;
  return Tri::undecided;
}

/// Exact equality certificates for the two legs of H <= house <= M on a
/// nonzero algebraic integer.  Ball comparison cannot settle the tight cases
/// (they are exact equalities), but the root geometry certifies them:
///  - every conjugate in one certified-equal-modulus class forces
///    M = house^deg, hence H = house (integers have house >= 1 because
///    |prod roots| = |constant term| >= 1);
///  - the selected root alone in its class with all other conjugates
///    certified inside the unit circle forces M = house;
///  - one modulus class with |constant term| = 1 puts every root exactly on
///    the unit circle (|root|^deg = 1), so house = M = 1 as well.
struct L2Structural {
  bool left_equal = false;
  bool right_equal = false;
};

inline L2Structural l2_structural(const AlgebraicNumber& a, mpfr_prec_t prec) {
  L2Structural out;
  const IntPolynomial& q = a.min_poly();
  if (q.degree() == 1) {
    out.left_equal = out.right_equal = true;
    return out;
  }
  long bits = std::max<long>(2 * prec, 96);
  std::vector<Ball> balls = isolate_roots_rel(q, bits, max_precision());
  IntPolynomial neg_gcd = gcd(q, q.negate_var());
  UnionFind uf = modulus_classes(q, balls, neg_gcd, bits, max_precision());
  Ball hint = a.isolator();
  size_t sel = match_root(q, hint, balls, max_precision());

  bool one_class = true;
  bool sel_alone = true;
  for (size_t i = 0; i < balls.size(); ++i) {
    if (i == sel) continue;
    if (uf.find(i) == uf.find(sel))
      sel_alone = false;
    else
      one_class = false;
  }
  out.left_equal = one_class;
  if (one_class && q.is_monic() && ::abs(q[0]) == 1) out.right_equal = true;

  if (sel_alone) {
    RealBall one = RealBall::exact_long(1);
    bool others_small = true;
    for (size_t i = 0; i < balls.size(); ++i) {
      if (i == sel) continue;
      if (less(balls[i].abs(mpfr_prec_t(bits) + 16), one) != Tri::yes) {
        others_small = false;
        break;
      }
    }
    out.right_equal = others_small;
  }
  return out;
}

struct EntryOutcome {
  Tri ok = Tri::undecided;
  std::optional<RealBall> margin;
};

inline EntryOutcome check_l2_entry(const AlgebraicNumber& a, const NumberProfile& pr,
                                   mpfr_prec_t prec) {
  mpfr_prec_t wp = prec + 16;
  Tri left = order_leg(pr.log2_height, pr.log2_house);
  Tri right = order_leg(pr.log2_house, pr.log2_mahler);
  RealBall left_margin = sub(pr.log2_house, pr.log2_height, wp);
  RealBall right_margin = sub(pr.log2_mahler, pr.log2_house, wp);

  if (left == Tri::no || right == Tri::no)
    return {Tri::no, interval_min(left_margin, right_margin, wp)};

  if (left == Tri::undecided || right == Tri::undecided) {
    L2Structural st = l2_structural(a, prec);
    if (left == Tri::undecided && st.left_equal) {
      left = Tri::yes;
      left_margin = RealBall::exact_long(0);
    }
    if (right == Tri::undecided && st.right_equal) {
      right = Tri::yes;
      right_margin = RealBall::exact_long(0);
    }
  }

  if (left == Tri::undecided || right == Tri::undecided) {
    // one escalation round before reporting the case as open
    NumberProfile hi = profile(a, 4 * prec);
    mpfr_prec_t wq = 4 * prec + 16;
    if (left == Tri::undecided) {
      left = order_leg(hi.log2_height, hi.log2_house);
      left_margin = sub(hi.log2_house, hi.log2_height, wq);
    }
    if (right == Tri::undecided) {
      right = order_leg(hi.log2_house, hi.log2_mahler);
      right_margin = sub(hi.log2_mahler, hi.log2_house, wq);
    }
  }

  EntryOutcome out;
  out.margin = interval_min(left_margin, right_margin, wp);
  if (left == Tri::no || right == Tri::no)
    out.ok = Tri::no;
  else if (left == Tri::yes && right == Tri::yes)
    out.ok = Tri::yes;
  else
    out.ok = Tri::undecided;
  return out;
}

/// Second route for the height: direct product of unit-clamped root moduli at
/// a different precision, logged once at the end.  Disagrees with the profile
/// route in rounding and evaluation order, so a disjoint result is a genuine
/// contradiction rather than a shared rounding artifact.
inline RealBall height_by_product(const AlgebraicNumber& a, mpfr_prec_t prec) {
  const IntPolynomial& q = a.min_poly();
  mpfr_prec_t wp = 2 * prec + 48;
  std::vector<Ball> balls = isolate_roots_rel(q, 2 * prec, max_precision());
  RealBall m = RealBall::exact_mpz(abs(q.lead()));
  Dyadic one = Dyadic::from_long(1);
  for (const Ball& b : balls) {
    RealBall md = b.abs(wp);
    Dyadic lo = Dyadic::max(md.lower(), one), hi = Dyadic::max(md.upper(), one);
    m = mul(m, RealBall::from_endpoints(lo, hi, wp), wp);
  }
  return div_ui(log2(m, wp), static_cast<unsigned long>(q.degree()), wp);
}

}  // namespace detail

/// Run the requested checks over a corpus.  One report per requested id, in
/// the given order.  All randomness inside (the L4 tuple sampler) derives
/// from corpus.seed, so reports replay exactly.
inline std::vector<CheckReport> run_lemma_checks(const Corpus& c,
                                                 const std::vector<LemmaId>& which,
                                                 const LemmaCheckOptions& opt = {}) {
  const size_t n = c.entries.size();
  const mpfr_prec_t prec = opt.prec;
  const mpfr_prec_t wp = prec + 16;

  std::vector<std::optional<NumberProfile>> pcache(n);
  auto prof = [&](size_t i) -> const NumberProfile& {
    if (!pcache[i]) pcache[i] = profile(c.entries[i], prec);
    return *pcache[i];
  };

  // Lazy per-entry value enclosures for the L5 difference oracle, cached at
  // the largest precision requested so far.
  std::vector<std::optional<Ball>> vcache(n);
  std::vector<long> vbits(n, 0);
  auto value_at = [&](size_t i, long bits) -> const Ball& {
    if (!vcache[i] || vbits[i] < bits) {
      vcache[i] = c.entries[i].value(mpfr_prec_t(bits));
      vbits[i] = bits;
    }
    return *vcache[i];
  };

  std::vector<CheckReport> out;
  for (LemmaId id : which) {
    CheckReport r;
    r.lemma = id;
    switch (id) {
      case LemmaId::L2: {
        // H <= house <= M for nonzero algebraic integers.
        for (size_t i = 0; i < n; ++i) {
          const AlgebraicNumber& a = c.entries[i];
          if (a.is_zero() || !a.is_algebraic_integer()) continue;
          ++r.cases;
          detail::EntryOutcome o = detail::check_l2_entry(a, prof(i), prec);
          if (o.ok == Tri::yes)
            ++r.passes;
          else if (o.ok == Tri::no)
            ++r.failures;
          else
            ++r.undecided;
          if (o.margin) detail::record_margin(r, *o.margin);
        }
        break;
      }
      case LemmaId::T2: {
        // H = M^(1/deg): the profile route and the product route must agree.
        for (size_t i = 0; i < n; ++i) {
          const AlgebraicNumber& a = c.entries[i];
          if (a.is_zero()) continue;
          ++r.cases;
          RealBall h2 = detail::height_by_product(a, prec);
          const RealBall& h1 = prof(i).log2_height;
          if (overlap(h1, h2))
            ++r.passes;
          else
            ++r.failures;
          detail::record_margin(r, sub(h1, h2, wp));
        }
        break;
      }
      case LemmaId::L3: {
        // H(1/alpha) = H(alpha) for nonzero entries.
        for (size_t i = 0; i < n; ++i) {
          const AlgebraicNumber& a = c.entries[i];
          if (a.is_zero()) continue;
          ++r.cases;
          AlgebraicNumber rec = reciprocal(a);
          RealBall hr = profile(rec, prec).log2_height;
          const RealBall& ha = prof(i).log2_height;
          if (overlap(ha, hr))
            ++r.passes;
          else
            ++r.failures;
          detail::record_margin(r, sub(ha, hr, wp));
        }
        break;
      }
      case LemmaId::L4: {
        // H(sum) <= 2^k prod H and deg(sum) <= prod deg over random tuples of
        // k <= 3 entries of degree <= 3 (the hypothesis of the sum bound).
        std::vector<size_t> pool;
        for (size_t i = 0; i < n; ++i)
          if (c.entries[i].degree() <= 3) pool.push_back(i);
        if (pool.empty()) break;
        detail::SplitMix64 rng(c.seed ^ 0x4c344c344c344c34ull);
        for (long cse = 0; cse < opt.l4_cases; ++cse) {
          int k = 2 + static_cast<int>(rng.below(2));
          std::vector<size_t> idx;
          long dprod = 0;
          for (int trial = 0;; ++trial) {
            if (trial == 64) k = 2;  // tight caps: triples may not fit
            idx.clear();
            dprod = 1;
            for (int j = 0; j < k; ++j) {
              size_t pick = pool[static_cast<size_t>(rng.below(pool.size()))];
              idx.push_back(pick);
              dprod *= c.entries[pick].degree();
            }
            if (dprod <= opt.l4_degree_cap) break;
          }
          ++r.cases;
          // A repeated pick is the same number (equal minimal polynomial and
          // selector), so fold multiplicities into a rational scaling first;
          // feeding m*alpha + ... through the resultant route would bury a
          // small minimal polynomial inside a huge reducible resultant.
          std::vector<std::pair<size_t, long>> terms;
          for (size_t pick : idx) {
            bool merged = false;
            for (auto& [t, m] : terms)
              if (c.entries[t].min_poly() == c.entries[pick].min_poly()) {
                ++m;
                merged = true;
                break;
              }
            if (!merged) terms.emplace_back(pick, 1);
          }
          std::optional<AlgebraicNumber> sum;
          try {
            for (const auto& [t, m] : terms) {
              AlgebraicNumber scaled =
                  m == 1 ? c.entries[t]
                         : detail::combine_with_rational(CombineOp::mul, c.entries[t],
                                                         mpq_class(m), {});
              sum = sum ? exact_combine(CombineOp::add, *sum, scaled, opt.l4_degree_cap)
                        : std::move(scaled);
            }
          } catch (const IrreducibilityUndecided&) {
            // the exact sum ran out of factor-search budget: no verdict
            sum.reset();
          } catch (const PrecisionExhausted&) {
            sum.reset();
          }
          if (!sum) {
            ++r.undecided;
            continue;
          }
          const AlgebraicNumber& s = *sum;
          if (s.degree() > dprod) {
            ++r.failures;  // exact integer comparison: any violation is certified
            continue;
          }
          RealBall lhs = profile(s, prec).log2_height;
          RealBall rhs = RealBall::exact_long(k);
          for (int j = 0; j < k; ++j)
            rhs = add(rhs, prof(idx[static_cast<size_t>(j)]).log2_height, wp);
          Tri t = detail::order_leg(lhs, rhs);
          if (t == Tri::yes)
            ++r.passes;
          else if (t == Tri::no)
            ++r.failures;
          else
            ++r.undecided;
          detail::record_margin(r, sub(rhs, lhs, wp));
        }
        break;
      }
      case LemmaId::L5: {
        // |alpha - beta| >= 2^-(da db) M(alpha)^-db M(beta)^-da over all
        // pairs with distinct minimal polynomials.  The difference oracle
        // uses only root refinement, at precision at least 4x the bound's
        // log-magnitude.
        for (size_t i = 0; i < n; ++i) {
          for (size_t j = i + 1; j < n; ++j) {
            const AlgebraicNumber& a = c.entries[i];
            const AlgebraicNumber& b = c.entries[j];
            if (a.min_poly() == b.min_poly()) continue;  // conjugates or equal
            ++r.cases;

            mpz_class da(a.degree()), db(b.degree());
            RealBall t = add(mul_mpz(prof(i).log2_mahler, db, wp),
                             mul_mpz(prof(j).log2_mahler, da, wp), wp);
            RealBall bound = neg(add(t, RealBall::exact_mpz(da * db), wp));

            double mag = std::abs(bound.mid.to_double());
            long needed = std::max<long>(128, 4 * (static_cast<long>(mag) + 1));
            Tri verdict = Tri::undecided;
            std::optional<RealBall> margin;
            for (long bits = needed; bits <= static_cast<long>(max_precision());
                 bits *= 2) {
              Ball diff = sub(value_at(i, bits), value_at(j, bits), mpfr_prec_t(bits) + 16);
              RealBall ad = diff.abs(mpfr_prec_t(bits) + 16);
              if (ad.lower().sgn() <= 0) continue;  // not yet separated
              RealBall ld = log2(ad, wp);
              verdict = detail::order_leg(bound, ld);
              margin = sub(ld, bound, wp);
              if (verdict != Tri::undecided) break;
            }
            if (verdict == Tri::yes)
              ++r.passes;
            else if (verdict == Tri::no)
              ++r.failures;
            else
              ++r.undecided;
            if (margin) detail::record_margin(r, *margin);
          }
        }
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace cfcert
