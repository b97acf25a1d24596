#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "cfcert/config.hpp"
#include "cfcert/errors.hpp"
#include "cfcert/intpoly.hpp"
#include "cfcert/rootisolation.hpp"

namespace cfcert {

struct MinPolyOptions {
  mpfr_prec_t prec_cap = max_precision();
  unsigned long long node_budget = kFactorSearchBudget;
  long lead_divisor_limit = 10000;
};

struct MinPolyResult {
  IntPolynomial poly;  // primitive, irreducible, positive leading coefficient
  Ball isolator;       // contains exactly one root of poly
};

namespace detail {

// A conjugation-closed atom of the root set: either one certified-real root
// or a certified complex-conjugate pair (indices into the ball vector; the
// representative of a pair is the ball with positive imaginary part).
struct Cluster {
  size_t rep;
  std::optional<size_t> partner;
  long weight() const { return partner ? 2 : 1; }
};

inline bool possibly_meets(const Ball& a, const Ball& b) {
  return !certainly_disjoint(a, b);
}

/// Conservative test: may the disk meet the real segment [lo, hi] x {0}?
inline bool possibly_meets_segment(const Ball& b, const Dyadic& lo, const Dyadic& hi) {
  if (!b.imag().contains(mpq_class(0))) {
    // |Im| certainly above rad?  imag() ball contains 0 iff |im| <= rad.
    return false;
  }
  // Endpoints at the midpoint's precision: a fixed low precision would smear
  // the segment over 2^(exponent - prec) and can absorb neighbouring roots.
  Dyadic l = Dyadic::sub(b.re, b.rad, b.re.prec() + 8, MPFR_RNDD);
  Dyadic h = Dyadic::add(b.re, b.rad, b.re.prec() + 8, MPFR_RNDU);
  return !(h < lo || hi < l);
}

/// Certify each root ball of q as real or as a member of a conjugate pair.
/// Refines the balls in place when undecided.  q must be squarefree with
/// the balls exactly its isolated roots.
inline std::vector<Cluster> classify_conjugation(const IntPolynomial& q,
                                                 std::vector<Ball>& balls,
                                                 mpfr_prec_t prec_cap) {
  for (int round = 0;; ++round) {
    std::vector<Cluster> clusters;
    std::vector<int> state(balls.size(), 0);  // 0 unknown, 1 real, 2 nonreal
    bool stuck = false;

    for (size_t i = 0; i < balls.size(); ++i) {
      if (balls[i].is_exact()) {  // midpoint is the root itself
        state[i] = balls[i].im.is_zero() ? 1 : 2;
        continue;
      }
      if (!balls[i].imag().contains(mpq_class(0))) {
        state[i] = 2;
        continue;
      }
      // Candidate real root: certify by an exact sign change over the real
      // segment through the disk, unique to this disk.
      Dyadic lo = Dyadic::sub(balls[i].re, balls[i].rad, balls[i].re.prec() + 8, MPFR_RNDD);
      Dyadic hi = Dyadic::add(balls[i].re, balls[i].rad, balls[i].re.prec() + 8, MPFR_RNDU);
      int slo = q.sign_at(lo), shi = q.sign_at(hi);
      bool unique = true;
      for (size_t j = 0; j < balls.size() && unique; ++j)
        if (j != i && possibly_meets_segment(balls[j], lo, hi)) unique = false;
      if (slo * shi < 0 && unique)
        state[i] = 1;
      else
        stuck = true;
    }

    if (!stuck) {
      // Pair the nonreal balls by certified conjugate matching.
      std::vector<size_t> owner(balls.size(), SIZE_MAX);
      for (size_t i = 0; i < balls.size() && !stuck; ++i) {
        if (state[i] != 2 || balls[i].im.sgn() <= 0) continue;
        Ball cb = balls[i].conj();
        size_t match = SIZE_MAX;
        int hits = 0;
        for (size_t j = 0; j < balls.size(); ++j) {
          if (j == i) continue;
          if (possibly_meets(cb, balls[j])) {
            match = j;
            ++hits;
          }
        }
        if (hits != 1 || state[match] != 2 || owner[match] != SIZE_MAX ||
            balls[match].im.sgn() >= 0) {
          stuck = true;
          break;
        }
        owner[match] = i;
        clusters.push_back({i, match});
      }
      if (!stuck) {
        for (size_t i = 0; i < balls.size(); ++i) {
          if (state[i] == 1)
            clusters.push_back({i, std::nullopt});
          else if (state[i] == 2 && balls[i].im.sgn() < 0 && owner[i] == SIZE_MAX)
            stuck = true;  // unpaired lower-half ball
        }
      }
      if (!stuck) return clusters;
    }

    if (round > 60) throw PrecisionExhausted("conjugation structure not certified");
    for (auto& b : balls) {
      Dyadic target = b.rad.mul_2si(-8);
      if (target.is_zero()) continue;
      b = refine_root(q, b, abs_stop(target), prec_cap);
    }
  }
}

/// Index of the unique ball that can contain the root marked by `hint`,
/// refining the hint (against q) until the match is unambiguous.
inline size_t match_root(const IntPolynomial& q, Ball& hint, std::vector<Ball>& balls,
                         mpfr_prec_t prec_cap) {
  for (int round = 0;; ++round) {
    size_t match = SIZE_MAX;
    int hits = 0;
    for (size_t j = 0; j < balls.size(); ++j) {
      if (possibly_meets(hint, balls[j])) {
        match = j;
        ++hits;
      }
    }
    if (hits == 1) return match;
    if (hits == 0)
      throw Error("internal: isolator matches no root ball");
    if (round > 60) throw PrecisionExhausted("root matching not separated");
    Dyadic target = hint.rad.mul_2si(-8);
    if (target.is_zero())
      target = balls[match].rad.mul_2si(-8);
    hint = refine_root(q, hint, abs_stop(target), prec_cap);
    for (auto& b : balls) {
      Dyadic t2 = b.rad.mul_2si(-8);
      if (!t2.is_zero()) b = refine_root(q, b, abs_stop(t2), prec_cap);
    }
  }
}

/// Real coefficient enclosures of prod over clusters S of the monic factor
/// (x - root) or (x^2 - 2 Re(root) x + |root|^2).
inline std::vector<RealBall> cluster_product(const std::vector<Ball>& balls,
                                             const std::vector<Cluster>& clusters,
                                             const std::vector<char>& take,
                                             mpfr_prec_t wp) {
  std::vector<RealBall> acc{RealBall::exact_long(1)};
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    if (!take[ci]) continue;
    const Cluster& cl = clusters[ci];
    std::vector<RealBall> factor;
    if (!cl.partner) {
      factor = {neg(balls[cl.rep].real()), RealBall::exact_long(1)};
    } else {
      const Ball& b = balls[cl.rep];
      RealBall s = mul_pow2(b.real(), 1);                      // 2 Re
      RealBall n = add(mul(b.real(), b.real(), wp),
                       mul(b.imag(), b.imag(), wp), wp);       // |root|^2
      factor = {n, neg(s), RealBall::exact_long(1)};
    }
    std::vector<RealBall> next(acc.size() + factor.size() - 1, RealBall::exact_long(0));
    for (size_t i = 0; i < acc.size(); ++i)
      for (size_t j = 0; j < factor.size(); ++j)
        next[i + j] = add(next[i + j], mul(acc[i], factor[j], wp), wp);
    acc = std::move(next);
  }
  return acc;
}

/// Positive divisors of lead up to `limit`, plus |lead| itself, ascending.
inline std::vector<mpz_class> lead_divisors(const mpz_class& lead, long limit) {
  mpz_class a = ::abs(lead);
  std::vector<mpz_class> out;
  for (long c = 1; mpz_class(c) <= a && c <= limit; ++c)
    if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(c)))
      out.emplace_back(c);
  if (out.empty() || out.back() != a) out.push_back(a);
  return out;
}

/// frac(lead * mid) in [0, 1) as a double.  The product is formed at a
/// precision wide enough to make it exact, and mpfr_frac only drops leading
/// bits, so the result carries nothing beyond the final double rounding.
inline double trace_key(const Dyadic& mid, const mpz_class& lead) {
  mpfr_prec_t p = mid.prec() +
                  static_cast<mpfr_prec_t>(mpz_sizeinbase(lead.get_mpz_t(), 2)) + 8;
  Dyadic prod(p);
  mpfr_mul_z(prod.raw(), mid.raw(), lead.get_mpz_t(), MPFR_RNDN);
  mpfr_frac(prod.raw(), prod.raw(), MPFR_RNDN);
  double f = mpfr_get_d(prod.raw(), MPFR_RNDN);
  return f < 0 ? f + 1.0 : f;
}

}  // namespace detail

/// Minimal polynomial of the root of P marked by the isolating disk `hint`.
/// Complete search: conjugation-closed subsets of the certified root clusters
/// of the squarefree part, filtered by a multi-prime factor-degree sieve,
/// verified by exact division and a certified root-membership test.
inline MinPolyResult min_poly_from_root(const IntPolynomial& P, Ball hint,
                                        const MinPolyOptions& opt = {}) {
  if (P.is_zero()) throw ZeroInput("minimal polynomial of zero polynomial");
  IntPolynomial q = squarefree_part(P);
  if (q.degree() < 1) throw ZeroInput("minimal polynomial of a constant");
  if (q.degree() == 1) return {q, isolate_roots_rel(q, 64, opt.prec_cap)[0]};

  size_t m = static_cast<size_t>(q.degree());
  auto allowed = possible_factor_degrees(q);
  bool sieve_irreducible = true;
  for (size_t k = 1; k < m; ++k)
    if (allowed[k]) sieve_irreducible = false;
  if (sieve_irreducible) return {q, std::move(hint)};

  std::vector<mpz_class> lead_divs = detail::lead_divisors(q.lead(), opt.lead_divisor_limit);
  bool monic = q.is_monic();

  long rel_bits = 48;
  unsigned long long budget = opt.node_budget;
  for (;;) {
    std::vector<Ball> balls = isolate_roots_rel(q, rel_bits, opt.prec_cap);
    size_t target_ball = detail::match_root(q, hint, balls, opt.prec_cap);
    std::vector<detail::Cluster> clusters =
        detail::classify_conjugation(q, balls, opt.prec_cap);

    size_t target_cluster = SIZE_MAX;
    for (size_t ci = 0; ci < clusters.size(); ++ci)
      if (clusters[ci].rep == target_ball ||
          (clusters[ci].partner && *clusters[ci].partner == target_ball))
        target_cluster = ci;
    if (target_cluster == SIZE_MAX) throw Error("internal: target cluster missing");

    mpfr_prec_t wp = std::max<mpfr_prec_t>(128, static_cast<mpfr_prec_t>(rel_bits) + 64);
    bool need_precision = false;
    std::optional<MinPolyResult> found;

    // Per-cluster enclosures of the first two power sums of its roots.  The
    // first is the trace contribution; the second breaks ties the trace
    // cannot see (subsets related by root sign flips share a trace but not a
    // sum of squares).
    std::vector<RealBall> cluster_sum(clusters.size()), cluster_sq(clusters.size());
    for (size_t ci = 0; ci < clusters.size(); ++ci) {
      const Ball& b = balls[clusters[ci].rep];
      RealBall re2 = mul(b.real(), b.real(), wp);
      if (clusters[ci].partner) {
        cluster_sum[ci] = mul_pow2(b.real(), 1);
        cluster_sq[ci] = mul_pow2(sub(re2, mul(b.imag(), b.imag(), wp), wp), 1);
      } else {
        cluster_sum[ci] = b.real();
        cluster_sq[ci] = re2;
      }
    }

    std::vector<size_t> others;
    for (size_t ci = 0; ci < clusters.size(); ++ci)
      if (ci != target_cluster) others.push_back(ci);
    const size_t nly = others.size();
    if (nly > 36)
      throw IrreducibilityUndecided("factor search not attempted beyond 37 root clusters");

    const long tw = clusters[target_cluster].weight();
    long want_max = -1;
    for (size_t k = 1; k < m; ++k)
      if (allowed[k]) want_max = static_cast<long>(k) - tw;

    // Candidate subsets are found by pairing: the first two power sums p1, p2
    // of an integer divisor g of q satisfy lead(q)*p1 in Z and lead(q)^2*p2
    // in Z (lead(g) | lead(q); Newton: g_k*p1 = -g_{k-1} and g_k^2*p2 =
    // g_{k-1}^2 - 2*g_k*g_{k-2}).  So enumerate the two halves of the
    // non-target clusters once, key every part-subset by the fractional
    // parts of the scaled power-sum midpoints, and match complementary keys
    // through a sorted window lookup on p1 with a p2 side filter.  Windows
    // are padded past every radius and rounding contribution, so a true
    // divisor cannot be missed; near-integer impostors are discarded by the
    // exact checks below.  Compared to a direct subset walk this is 2^(c/2)
    // work instead of 2^c, which is what makes totally real resultants
    // (every cluster a singleton) tractable.
    const mpz_class lead_abs = ::abs(q.lead());
    const mpz_class lead_sq = lead_abs * lead_abs;
    double rad_total = cluster_sum[target_cluster].rad.to_double();
    double rad2_total = cluster_sq[target_cluster].rad.to_double();
    for (size_t ci : others) {
      rad_total += cluster_sum[ci].rad.to_double();
      rad2_total += cluster_sq[ci].rad.to_double();
    }
    double win = 2.0 * rad_total * lead_abs.get_d() * 1.01 + 0x1p-46;
    double win2 = 2.0 * rad2_total * lead_sq.get_d() * 1.01 + 0x1p-46;
    if (!(win < 0.49)) win = 0.5;    // windows degenerate: scan everything
    if (!(win2 < 0.49)) win2 = 0.5;  // side filter degenerate: pass everything

    // Key precision leaves 160 bits below the largest power-sum magnitude
    // even after the lead multiplier, so accumulated midpoint rounding stays
    // far inside the window padding.
    mpfr_exp_t mag = 1;
    for (size_t ci = 0; ci < clusters.size(); ++ci) {
      if (!cluster_sum[ci].mid.is_zero())
        mag = std::max(mag, cluster_sum[ci].mid.exponent());
      if (!cluster_sq[ci].mid.is_zero())
        mag = std::max(mag, cluster_sq[ci].mid.exponent());
    }
    const mpfr_prec_t kp =
        static_cast<mpfr_prec_t>(mag) + 160 +
        static_cast<mpfr_prec_t>(mpz_sizeinbase(lead_sq.get_mpz_t(), 2));

    struct HalfEntry {
      double key, key2;
      std::uint64_t mask;
      long w;
    };
    auto enumerate_half = [&](size_t lo, size_t hi, std::vector<HalfEntry>& out) {
      struct HF {
        size_t idx;
        long w;
        std::uint64_t mask;
        Dyadic mid, mid2;
        int stage;  // 0: try include, 1: try exclude, 2: unwind
      };
      std::vector<HF> st{{lo, 0, 0, Dyadic::from_long(0), Dyadic::from_long(0), 0}};
      while (!st.empty()) {
        if (budget-- == 0)
          throw IrreducibilityUndecided("factor search budget exhausted");
        HF& f = st.back();
        if (f.w > want_max) {
          st.pop_back();
          continue;
        }
        if (f.idx == hi) {
          out.push_back({detail::trace_key(f.mid, lead_abs),
                         detail::trace_key(f.mid2, lead_sq), f.mask, f.w});
          st.pop_back();
          continue;
        }
        size_t ci = others[f.idx];
        long w = clusters[ci].weight();
        if (f.stage == 0) {
          f.stage = 1;
          st.push_back({f.idx + 1, f.w + w, f.mask | (std::uint64_t(1) << f.idx),
                        Dyadic::add(f.mid, cluster_sum[ci].mid, kp, MPFR_RNDN),
                        Dyadic::add(f.mid2, cluster_sq[ci].mid, kp, MPFR_RNDN), 0});
        } else if (f.stage == 1) {
          f.stage = 2;
          st.push_back({f.idx + 1, f.w, f.mask, f.mid, f.mid2, 0});
        } else {
          st.pop_back();
        }
      }
    };

    std::vector<HalfEntry> A;
    std::vector<std::vector<HalfEntry>> byw(static_cast<size_t>(std::max<long>(want_max, 0)) + 1);
    if (want_max >= 0) {
      std::vector<HalfEntry> B;
      enumerate_half(0, nly / 2, A);
      enumerate_half(nly / 2, nly, B);
      for (const HalfEntry& e : B)
        if (e.w <= want_max) byw[static_cast<size_t>(e.w)].push_back(e);
      for (auto& v : byw)
        std::sort(v.begin(), v.end(), [](const HalfEntry& x, const HalfEntry& y) {
          return x.key != y.key ? x.key < y.key : x.mask < y.mask;
        });
    }
    const double key_t = detail::trace_key(cluster_sum[target_cluster].mid, lead_abs);
    const double key_t2 = detail::trace_key(cluster_sq[target_cluster].mid, lead_sq);

    auto scan_bucket = [&](const std::vector<HalfEntry>& vec, double center, auto&& emit) {
      if (vec.empty()) return;
      if (win >= 0.5) {
        for (const HalfEntry& e : vec) emit(e);
        return;
      }
      auto scan = [&](double l, double h) {
        auto it = std::lower_bound(vec.begin(), vec.end(), l,
                                   [](const HalfEntry& e, double v) { return e.key < v; });
        for (; it != vec.end() && it->key <= h; ++it) emit(*it);
      };
      double l = center - win, h = center + win;
      if (l < 0) {
        scan(0.0, h);
        scan(l + 1.0, 1.0);
      } else if (h >= 1.0) {
        scan(l, 1.0);
        scan(0.0, h - 1.0);
      } else {
        scan(l, h);
      }
    };

    auto power_sums_meet_integers = [&](std::uint64_t mask) {
      RealBall t = cluster_sum[target_cluster];
      RealBall t2 = cluster_sq[target_cluster];
      for (size_t i = 0; i < nly; ++i)
        if (mask >> i & 1) {
          t = add(t, cluster_sum[others[i]], wp);
          t2 = add(t2, cluster_sq[others[i]], wp);
        }
      if (!monic) {
        t = mul_mpz(t, lead_abs, wp);
        t2 = mul_mpz(t2, lead_sq, wp);
      }
      return t.contains_integer() && t2.contains_integer();
    };

    std::vector<char> take(clusters.size(), 0);
    std::vector<std::uint64_t> cands;
    for (size_t k = 1; k < m && !found && !need_precision; ++k) {
      if (!allowed[k]) continue;
      long want = static_cast<long>(k) - tw;
      if (want < 0) continue;
      cands.clear();
      for (const HalfEntry& a : A) {
        if (budget-- == 0)
          throw IrreducibilityUndecided("factor search budget exhausted");
        long wb = want - a.w;
        if (wb < 0) continue;
        double center = 1.0 - std::fmod(key_t + a.key, 1.0);
        if (center >= 1.0) center -= 1.0;
        scan_bucket(byw[static_cast<size_t>(wb)], center, [&](const HalfEntry& b) {
          if (budget-- == 0)
            throw IrreducibilityUndecided("factor search budget exhausted");
          double d2 = key_t2 + a.key2 + b.key2;
          if (win2 < 0.5 && std::fabs(d2 - std::nearbyint(d2)) > win2) return;
          cands.push_back(a.mask | b.mask);
          if (cands.size() > (size_t(1) << 20))
            throw IrreducibilityUndecided("factor search candidate set too large");
        });
      }
      for (std::uint64_t mask : cands) {
        if (budget < 256)
          throw IrreducibilityUndecided("factor search budget exhausted");
        budget -= 256;
        if (!power_sums_meet_integers(mask)) continue;
        std::fill(take.begin(), take.end(), 0);
        take[target_cluster] = 1;
        for (size_t i = 0; i < nly; ++i)
          if (mask >> i & 1) take[others[i]] = 1;

        // Reconstruct the candidate factor from the chosen clusters.
        auto coeffs = detail::cluster_product(balls, clusters, take, wp);
        bool wide = false;
        for (const auto& cb : coeffs)
          if (!(cb.rad < Dyadic::from_double(0.25))) wide = true;
        if (wide) {
          need_precision = true;
          break;
        }
        for (const mpz_class& cc : lead_divs) {
          std::vector<mpz_class> gi(coeffs.size());
          bool ok = true;
          for (size_t i = 0; i < coeffs.size() && ok; ++i) {
            RealBall scaled = mul_mpz(coeffs[i], cc, wp);
            if (!scaled.unique_integer(gi[i])) ok = false;
          }
          if (!ok) continue;
          IntPolynomial g(std::move(gi));
          if (g.degree() != static_cast<long>(k)) continue;
          auto h = exact_divide(q, g);
          if (!h) continue;
          // g | q.  Certify that the marked root belongs to g, not h.
          Ball tb = balls[target_ball];
          for (;;) {
            Ball gv = g.eval_ball(tb, wp);
            Ball hv = h->eval_ball(tb, wp);
            if (hv.certainly_nonzero()) {
              found = MinPolyResult{g.primitive(), tb};
              break;
            }
            if (gv.certainly_nonzero()) break;  // root lives in h
            Dyadic t2 = tb.rad.mul_2si(-16);
            if (t2.is_zero()) throw Error("internal: exact root in both factors");
            tb = refine_root(q, tb, abs_stop(t2), opt.prec_cap);
          }
          if (found) break;
        }
      }
    }

    if (found) return std::move(*found);
    if (!need_precision) {
      // No proper conjugation-closed divisor contains the marked root, so the
      // squarefree part is its minimal polynomial.
      return {q, balls[target_ball]};
    }
    rel_bits *= 2;
    if (static_cast<mpfr_prec_t>(rel_bits) > opt.prec_cap)
      throw PrecisionExhausted("factor reconstruction needs precision beyond cap");
  }
}

/// Certified irreducibility (of the primitive part) over Z.
inline bool is_irreducible(const IntPolynomial& P, const MinPolyOptions& opt = {}) {
  if (P.is_zero()) throw ZeroInput("irreducibility of zero polynomial");
  IntPolynomial pp = P.primitive();
  if (pp.degree() < 1) return false;
  if (pp.degree() == 1) return true;
  if (gcd(pp, pp.derivative()).degree() > 0) return false;  // repeated factor
  size_t m = static_cast<size_t>(pp.degree());
  auto allowed = possible_factor_degrees(pp);
  bool sieve_irreducible = true;
  for (size_t k = 1; k < m; ++k)
    if (allowed[k]) sieve_irreducible = false;
  if (sieve_irreducible) return true;
  Ball hint = isolate_roots_rel(pp, 48, opt.prec_cap)[0];
  MinPolyResult r = min_poly_from_root(pp, hint, opt);
  return r.poly.degree() == pp.degree();
}

}  // namespace cfcert
