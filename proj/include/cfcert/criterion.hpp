#pragma once

#include <string>
#include <vector>

#include "cfcert/cf.hpp"

namespace cfcert {

/// Exact growth-exponent denominator e(n) = D * d^(n-1) * prod_{i=1}^{n-2} (D*d^i + 1),
/// with the empty product (n <= 2) equal to 1.
inline mpz_class exponent_denominator(long n, long d, long D) {
  if (n < 1) throw Error("exponent_denominator: n must be >= 1");
  if (d < 2) throw HypothesisShapeError("exponent_denominator: d must exceed 1");
  if (D < 1) throw HypothesisShapeError("exponent_denominator: D must be >= 1");
  mpz_class e = D;
  mpz_class dp = 1;  // d^i
  for (long i = 1; i <= n - 1; ++i) e *= d;
  for (long i = 1; i <= n - 2; ++i) {
    dp *= d;
    e *= D * dp + 1;
  }
  return e;
}

struct GrowthLedger {
  long d = 2;
  long D = 1;
  struct Entry {
    long n;
    RealBall log2_house;
    mpz_class exponent_denominator;
    RealBall normalized;  // log2_house / exponent_denominator
  };
  std::vector<Entry> per_n;            // entry i holds n = i+1
  std::vector<long> records;           // certified record indices k
  std::vector<long> record_undecided;  // comparisons that did not resolve
};

struct RecordScan {
  std::vector<long> records;
  std::vector<long> undecided;
};

namespace detail {

inline RealBall interval_max(const RealBall& a, const RealBall& b, mpfr_prec_t p) {
  Dyadic lo = Dyadic::max(a.lower(), b.lower());
  Dyadic hi = Dyadic::max(a.upper(), b.upper());
  return RealBall::from_endpoints(lo, hi, p);
}

}  // namespace detail

/// Record indices k (1-based, 1 <= k < values.size()) where
/// a_{k+1} > (1 + 1/k^2) * max_{n<=k} a_n holds certifiably; undecidable
/// comparisons are excluded from `records` and listed in `undecided`.
inline RecordScan detect_records(const std::vector<RealBall>& values, mpfr_prec_t p = 96) {
  if (values.empty()) throw Error("detect_records: empty sequence");
  RecordScan out;
  RealBall running = values[0];
  for (size_t k = 1; k < values.size(); ++k) {
    mpq_class factor(k * k + 1, k * k);
    RealBall bar = mul(running, RealBall::from_mpq(factor, p), p);
    Tri rec = less(bar, values[k]);
    if (rec == Tri::yes)
      out.records.push_back(static_cast<long>(k));
    else if (rec == Tri::undecided)
      out.undecided.push_back(static_cast<long>(k));
    running = detail::interval_max(running, values[k], p);
  }
  return out;
}

/// Same record criterion evaluated on log2-scale values: a record at k means
/// v_{k+1} > log2(1 + 1/k^2) + max_{n<=k} v_n.  Equivalent to detect_records
/// on the exponentials, but safe for values far outside floating-point range.
inline RecordScan detect_records_log2(const std::vector<RealBall>& log_values,
                                      mpfr_prec_t p = 96) {
  if (log_values.empty()) throw Error("detect_records: empty sequence");
  RecordScan out;
  RealBall running = log_values[0];
  for (size_t k = 1; k < log_values.size(); ++k) {
    mpq_class factor(k * k + 1, k * k);
    RealBall bar = add(running, log2(RealBall::from_mpq(factor, p), p), p);
    Tri rec = less(bar, log_values[k]);
    if (rec == Tri::yes)
      out.records.push_back(static_cast<long>(k));
    else if (rec == Tri::undecided)
      out.undecided.push_back(static_cast<long>(k));
    running = detail::interval_max(running, log_values[k], p);
  }
  return out;
}

enum class WitnessOutcome { holds, fails, undecided };

inline const char* to_string(WitnessOutcome w) {
  switch (w) {
    case WitnessOutcome::holds: return "holds";
    case WitnessOutcome::fails: return "fails";
    default: return "undecided";
  }
}

struct WitnessCheck {
  WitnessOutcome outcome;
  RealBall lhs;  // log2 house(alpha_{N+1})
  RealBall rhs;  // D(d+1)^N + D d^N * sum_{n<=N} log2 house(alpha_n)
};

/// The key growth inequality at index N, in log2 scale:
///   log2 house(alpha_{N+1})  >=  D(d+1)^N + D d^N sum_{n=1}^N log2 house(alpha_n).
inline WitnessCheck witness_check(const GrowthLedger& g, long N, mpfr_prec_t p = 128) {
  if (N < 1 || static_cast<size_t>(N + 1) > g.per_n.size())
    throw Error("witness_check: ledger does not cover indices 1..N+1");
  mpz_class d_pow = 1, dp1_pow = 1;
  RealBall acc = RealBall::exact_long(0);
  for (long n = 1; n <= N; ++n) {
    d_pow *= g.d;
    dp1_pow *= g.d + 1;
    acc = add(acc, g.per_n[static_cast<size_t>(n - 1)].log2_house, p);
  }
  RealBall rhs = add(RealBall::exact_mpz(g.D * dp1_pow),
                     mul_mpz(acc, g.D * d_pow, p), p);
  RealBall lhs = g.per_n[static_cast<size_t>(N)].log2_house;
  WitnessOutcome res = WitnessOutcome::undecided;
  if (leq(rhs, lhs) == Tri::yes)
    res = WitnessOutcome::holds;
  else if (less(lhs, rhs) == Tri::yes)
    res = WitnessOutcome::fails;
  return {res, lhs, rhs};
}

namespace detail {

/// Certified decision of (d+1)^N > d^N * (2N - 1 + L): ball comparison in
/// log2 scale with escalating precision, exact rational fallback on a tie.
inline bool display_contradicts(long N, long d, const mpq_class& L) {
  mpq_class t = 2 * N - 1 + L;
  for (mpfr_prec_t p = 96; p <= 1024; p *= 2) {
    RealBall lhs = mul_mpz(log2(RealBall::exact_long(d + 1), p), N, p);
    RealBall rhs = add(mul_mpz(log2(RealBall::exact_long(d), p), N, p),
                       log2(RealBall::from_mpq(t, p), p), p);
    Tri gt = less(rhs, lhs);
    if (gt != Tri::undecided) return gt == Tri::yes;
  }
  mpz_class a = 1, b = 1;
  for (long i = 0; i < N; ++i) {
    a *= d + 1;
    b *= d;
  }
  return mpq_class(a) > mpq_class(b) * t;
}

/// The ratio (d+1)^N / (d^N (2N-1+L)) increases from N to N+1 exactly when
/// L + 2N - 2d - 1 > 0 (cross-multiplied, all factors positive).  The
/// condition is monotone in N, so once true it stays true.
inline bool ratio_increases_at(long N, long d, const mpq_class& L) {
  return L + 2 * N - 2 * d - 1 > 0;
}

}  // namespace detail

struct ThresholdScan {
  long n_star;          // smallest N with the certified contradiction inequality
  bool window_ok;       // ratio increase certified for the 16 indices from n_star
  long stable_from;     // smallest N from which the inequality provably persists
};

/// Scans for the smallest N with (d+1)^N > d^N (2N - 1 + log2_H_star), the
/// point past which the exclusion argument's final quantity drops below 1.
/// `stable_from` additionally requires the comparison ratio to be increasing
/// for the next 16 indices; the increase condition is monotone in N, so the
/// inequality holds for every index >= stable_from.
inline ThresholdScan scan_contradiction_threshold(long d, long D, const mpq_class& log2_H_star,
                                                  long budget = 1000000) {
  if (d < 2) throw HypothesisShapeError("contradiction_threshold: d must exceed 1");
  if (D < 1) throw HypothesisShapeError("contradiction_threshold: D must be >= 1");
  if (log2_H_star < 0) throw Error("contradiction_threshold: H_star must be >= 1");

  // Fast per-N decision: one ball comparison at fixed precision with the
  // (possibly huge) H_star term rounded once up front; the exact fallback
  // only fires for near-ties, which occur at small N.
  const mpfr_prec_t p = 192;
  RealBall Lb = RealBall::from_mpq(log2_H_star, p);
  RealBall ld = log2(RealBall::exact_long(d), p);
  RealBall ld1 = log2(RealBall::exact_long(d + 1), p);
  auto contradicts = [&](long N) {
    RealBall lhs = mul_mpz(ld1, N, p);
    RealBall rhs = add(mul_mpz(ld, N, p),
                       log2(add(Lb, RealBall::exact_long(2 * N - 1), p), p), p);
    Tri gt = less(rhs, lhs);
    if (gt != Tri::undecided) return gt == Tri::yes;
    return detail::display_contradicts(N, d, log2_H_star);
  };

  ThresholdScan out{-1, false, -1};
  for (long N = 1; N <= budget; ++N) {
    if (!contradicts(N)) continue;
    bool window = true;
    for (long i = 0; i < 16 && window; ++i)
      window = detail::ratio_increases_at(N + i, d, log2_H_star);
    if (out.n_star < 0) {
      out.n_star = N;
      out.window_ok = window;
    }
    if (window) {
      out.stable_from = N;
      return out;
    }
  }
  if (out.n_star >= 0) return out;  // found, but never stabilized in budget
  throw SearchBudgetExceeded("contradiction_threshold: no witness index within budget");
}

inline long contradiction_threshold(long d, long D, const mpq_class& log2_H_star,
                                    long budget = 1000000) {
  return scan_contradiction_threshold(d, D, log2_H_star, budget).n_star;
}

struct InequalityReport {
  long n_max = 0;
  long d = 2;
  long D = 1;
  std::vector<Tri> first_holds;   // index i corresponds to N = i+1
  std::vector<Tri> second_holds;  // likewise
  long second_onset = -1;         // smallest N with the second inequality certified
  bool ratio_increasing = true;   // d^{n^2} / e(n) increases over n <= n_max
  long ratio_first_failure = -1;
};

/// Certified evaluation of the two calculus inequalities used to convert the
/// record inequality into the exponential lower bound:
///   (1)  ln(1 + 1/N^2) >= (2N^2 - 1) / (2N^4)
///   (2)  d^N (prod_{n=1}^{N-1} (D d^n + 1)) (2N^2 - 1)/(2N^4) >= ln(2) (d+1)^N
/// plus the exact monotonicity of the sufficiency ratio d^{n^2} / e(n).
inline InequalityReport check_proof_inequalities(long n_max, long d, long D,
                                                 mpfr_prec_t prec = 128) {
  if (n_max < 1) throw Error("check_proof_inequalities: n_max must be >= 1");
  if (d < 2) throw HypothesisShapeError("check_proof_inequalities: d must exceed 1");
  if (D < 1) throw HypothesisShapeError("check_proof_inequalities: D must be >= 1");
  InequalityReport out;
  out.n_max = n_max;
  out.d = d;
  out.D = D;
  out.first_holds.reserve(static_cast<size_t>(n_max));
  out.second_holds.reserve(static_cast<size_t>(n_max));

  // The second inequality's left side grows like 2^(N^2/2); it is compared in
  // log2 scale so large horizons stay cheap.
  RealBall log2_ln2 = log2(log(RealBall::exact_long(2), prec), prec);
  RealBall log2_d = log2(RealBall::exact_long(d), prec);
  RealBall log2_d1 = log2(RealBall::exact_long(d + 1), prec);
  RealBall log2_big = RealBall::exact_long(0);  // log2(d^N prod_{n<=N-1} (D d^n + 1))
  mpz_class d_pow_prev = 1;                     // d^{N-1}
  for (long N = 1; N <= n_max; ++N) {
    if (N == 1) {
      log2_big = log2_d;
    } else {
      d_pow_prev *= d;
      log2_big = add(add(log2_big, log2_d, prec),
                     log2(RealBall::exact_mpz(D * d_pow_prev + 1), prec), prec);
    }
    mpz_class n2 = mpz_class(N) * N;
    mpq_class poly(2 * n2 - 1, 2 * n2 * n2);

    RealBall lhs1 = log(RealBall::from_mpq(mpq_class(n2 + 1, n2), prec), prec);
    RealBall rhs1 = RealBall::from_mpq(poly, prec);
    Tri first = Tri::undecided;
    if (leq(rhs1, lhs1) == Tri::yes)
      first = Tri::yes;
    else if (less(lhs1, rhs1) == Tri::yes)
      first = Tri::no;
    out.first_holds.push_back(first);

    RealBall lhs2 = add(log2_big, log2(RealBall::from_mpq(poly, prec), prec), prec);
    RealBall rhs2 = add(log2_ln2, mul_mpz(log2_d1, N, prec), prec);
    Tri second = Tri::undecided;
    if (leq(rhs2, lhs2) == Tri::yes)
      second = Tri::yes;
    else if (less(lhs2, rhs2) == Tri::yes)
      second = Tri::no;
    out.second_holds.push_back(second);
    if (second == Tri::yes && out.second_onset < 0) out.second_onset = N;
  }

  // d^{n^2}/e(n) increases from n to n+1 iff d^{2n+1} e(n) > e(n+1); by the
  // recurrence e(n+1) = d (D d^{n-1} + 1) e(n) for n >= 2 this reduces to
  // d^{2n} > D d^{n-1} + 1, and to d^3 > d (always true) at n = 1.
  const mpz_class d2 = mpz_class(d) * d;
  mpz_class dd = 1;     // d^{2n}
  mpz_class d_pow = 1;  // d^{n-1}
  for (long n = 1; n < n_max; ++n) {
    dd *= d2;
    bool inc = true;
    if (n >= 2) {
      d_pow *= d;
      inc = dd > D * d_pow + 1;
    }
    if (!inc) {
      out.ratio_increasing = false;
      out.ratio_first_failure = n;
      break;
    }
  }
  return out;
}

enum class Verdict { ExcludedUpToHeight, Inconclusive };

inline const char* to_string(Verdict v) {
  return v == Verdict::ExcludedUpToHeight ? "ExcludedUpToHeight" : "Inconclusive";
}

struct HypothesisChecks {
  Tri degrees_ok = Tri::undecided;
  Tri monic_ok = Tri::undecided;
  Tri attains_house_ok = Tri::undecided;
  Tri q_monotone_ok = Tri::undecided;
  Tri q_product_ok = Tri::undecided;
};

struct Certificate {
  long d = 2;
  long D = 1;
  mpq_class log2_H_star;
  long N = -1;  // witness index, -1 when none certified
  HypothesisChecks checks;
  RealBall witness_lhs_log2, witness_rhs_log2;
  RealBall exclusion_rhs_log2;  // height-aware bound the witness must exceed
  long threshold_N_star = -1;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

/// Everything the verdict depends on, as certified tri-state sub-results.
/// Kept separate from Certificate so the final gate is a pure function of
/// the evidence (and can be exercised by fault injection).
struct CertificateEvidence {
  long d = 2;
  long D = 1;
  mpq_class log2_H_star;
  long horizon = 0;
  Tri degrees_ok = Tri::undecided;
  Tri monic_ok = Tri::undecided;
  Tri attains_house_ok = Tri::undecided;
  Tri q_monotone_ok = Tri::undecided;
  struct WitnessEvidence {
    long N;
    Tri witness_holds;   // growth inequality at N
    Tri q_product_ok;    // |q_{N+1} q_N| >= house(alpha_{N+1})
    Tri exclusion_ok;    // witness margin absorbs the height budget
    RealBall lhs, rhs_witness, rhs_exclusion;
  };
  std::vector<WitnessEvidence> witnesses;  // N = 1..horizon
  long threshold_N_star = -1;
  long threshold_stable_from = -1;
  bool threshold_budget_hit = false;
  bool tail_unconditional = false;  // every quotient certified real >= 1
  std::vector<long> records, record_undecided;
  GrowthLedger ledger;
};

/// Runs the continued-fraction engine and number profiles over the prefix
/// and certifies every exclusion hypothesis.
///
/// Certified hypothesis *failures* throw HypothesisViolated; comparisons
/// that merely fail to resolve are recorded as `undecided` and lead to an
/// Inconclusive verdict downstream.
inline CertificateEvidence gather_certificate_evidence(const std::vector<AlgebraicNumber>& quotients,
                                                       long d, long D,
                                                       const mpq_class& log2_H_star,
                                                       long horizon, mpfr_prec_t prec) {
  if (d < 2) throw HypothesisShapeError("build_certificate: d must exceed 1");
  if (D < 1) throw HypothesisShapeError("build_certificate: D must be >= 1");
  if (log2_H_star < 0) throw Error("build_certificate: H_star must be >= 1");
  if (horizon < 2) throw Error("build_certificate: horizon must be >= 2");
  if (quotients.size() < static_cast<size_t>(horizon) + 1)
    throw Error("build_certificate: need horizon+1 partial quotients");

  CertificateEvidence ev;
  ev.d = d;
  ev.D = D;
  ev.log2_H_star = log2_H_star;
  ev.horizon = horizon;

  const long M = horizon + 1;  // quotients examined: alpha_1 .. alpha_M
  long max_deg = 0;
  for (long n = 1; n <= M; ++n) {
    const AlgebraicNumber& a = quotients[static_cast<size_t>(n - 1)];
    if (a.is_zero())
      throw HypothesisViolated("zero-partial-quotient",
                               "alpha_" + std::to_string(n) + " is zero");
    if (a.degree() > d)
      throw HypothesisViolated("degree-exceeds-d",
                               "deg(alpha_" + std::to_string(n) + ") = " +
                                   std::to_string(a.degree()));
    max_deg = std::max(max_deg, a.degree());
    if (!a.is_algebraic_integer())
      throw HypothesisViolated("non-monic",
                               "alpha_" + std::to_string(n) + " is not an algebraic integer");
  }
  if (max_deg != d)
    throw HypothesisViolated("max-degree-not-attained",
                             "max deg over the prefix is " + std::to_string(max_deg) +
                                 ", hypothesis requires " + std::to_string(d));
  ev.degrees_ok = Tri::yes;
  ev.monic_ok = Tri::yes;

  ev.ledger.d = d;
  ev.ledger.D = D;
  ev.attains_house_ok = Tri::yes;
  for (long n = 1; n <= M; ++n) {
    const AlgebraicNumber& a = quotients[static_cast<size_t>(n - 1)];
    NumberProfile pr = profile(a, prec);
    if (pr.attains_house == Tri::no)
      throw HypothesisViolated("house-not-attained",
                               "alpha_" + std::to_string(n) +
                                   " certifiably does not attain its house");
    if (pr.attains_house == Tri::undecided) ev.attains_house_ok = Tri::undecided;
    GrowthLedger::Entry e;
    e.n = n;
    e.log2_house = pr.log2_house;
    e.exponent_denominator = exponent_denominator(n, d, D);
    e.normalized = div(pr.log2_house,
                       RealBall::exact_mpz(e.exponent_denominator), prec);
    ev.ledger.per_n.push_back(std::move(e));
  }

  CFTrace t = cf_begin();
  for (long n = 1; n <= M; ++n)
    t = advance(t, quotients[static_cast<size_t>(n - 1)], prec);
  if (t.monotone_upto >= M) {
    ev.q_monotone_ok = Tri::yes;
  } else {
    long m = t.monotone_upto;
    Tri link = less(t.states[static_cast<size_t>(m)].abs_q,
                    t.states[static_cast<size_t>(m + 1)].abs_q);
    if (link == Tri::no)
      throw HypothesisViolated("q-not-increasing",
                               "|q_" + std::to_string(m) + "| >= |q_" +
                                   std::to_string(m + 1) + "| certified");
    ev.q_monotone_ok = Tri::undecided;
  }

  ev.tail_unconditional = true;
  for (long n = 1; n <= M && ev.tail_unconditional; ++n)
    if (!detail::certified_real_ge_one(quotients[static_cast<size_t>(n - 1)]))
      ev.tail_unconditional = false;

  std::vector<RealBall> normalized;
  for (const auto& e : ev.ledger.per_n) normalized.push_back(e.normalized);
  RecordScan rs = detect_records_log2(normalized);
  ev.records = rs.records;
  ev.record_undecided = rs.undecided;
  ev.ledger.records = rs.records;
  ev.ledger.record_undecided = rs.undecided;

  mpz_class d_pow = 1;
  RealBall house_sum = RealBall::exact_long(0);
  for (long N = 1; N <= horizon; ++N) {
    d_pow *= d;
    house_sum = add(house_sum, ev.ledger.per_n[static_cast<size_t>(N - 1)].log2_house, prec);

    CertificateEvidence::WitnessEvidence w;
    w.N = N;
    WitnessCheck wc = witness_check(ev.ledger, N, prec);
    w.lhs = wc.lhs;
    w.rhs_witness = wc.rhs;
    w.witness_holds = wc.outcome == WitnessOutcome::holds
                          ? Tri::yes
                          : (wc.outcome == WitnessOutcome::fails ? Tri::no : Tri::undecided);

    // |q_{N+1} q_N| >= house(alpha_{N+1}), compared in log2 scale.
    const RealBall& qn = t.states[static_cast<size_t>(N)].abs_q;
    const RealBall& qn1 = t.states[static_cast<size_t>(N + 1)].abs_q;
    if (!qn.is_positive() || !qn1.is_positive()) {
      w.q_product_ok = Tri::undecided;
    } else {
      RealBall lq = add(log2(qn, prec), log2(qn1, prec), prec);
      Tri ge = leq(w.lhs, lq);
      w.q_product_ok = ge == Tri::yes ? Tri::yes : (ge == Tri::no ? Tri::no : Tri::undecided);
    }

    // Height-margin form of the final contradiction: the witness house must
    // exceed  D d^N (2N - 1 + log2 H*) + D d^N sum_{n<=N} log2 house(alpha_n),
    // so that the lower bound it forces on H(value) lies above the budget.
    mpq_class scale = mpq_class(D) * mpq_class(d_pow) * (2 * N - 1 + log2_H_star);
    w.rhs_exclusion = add(RealBall::from_mpq(scale, prec),
                          mul_mpz(house_sum, D * d_pow, prec), prec);
    Tri ex = leq(w.rhs_exclusion, w.lhs);
    w.exclusion_ok = ex == Tri::yes ? Tri::yes : (ex == Tri::no ? Tri::no : Tri::undecided);

    ev.witnesses.push_back(std::move(w));
  }

  try {
    ThresholdScan ts = scan_contradiction_threshold(d, D, log2_H_star);
    ev.threshold_N_star = ts.n_star;
    ev.threshold_stable_from = ts.stable_from;
  } catch (const SearchBudgetExceeded&) {
    ev.threshold_budget_hit = true;
  }
  return ev;
}

/// Pure verdict gate over gathered evidence.  ExcludedUpToHeight requires
/// every hypothesis check certified `yes` plus a witness index where the
/// growth inequality, the q-product inequality, and the height-margin
/// inequality are all certified.
inline Certificate finalize_certificate(const CertificateEvidence& ev) {
  Certificate c;
  c.d = ev.d;
  c.D = ev.D;
  c.log2_H_star = ev.log2_H_star;
  c.threshold_N_star = ev.threshold_N_star;
  c.checks.degrees_ok = ev.degrees_ok;
  c.checks.monic_ok = ev.monic_ok;
  c.checks.attains_house_ok = ev.attains_house_ok;
  c.checks.q_monotone_ok = ev.q_monotone_ok;

  const CertificateEvidence::WitnessEvidence* best = nullptr;
  for (const auto& w : ev.witnesses)
    if (w.witness_holds == Tri::yes && w.q_product_ok == Tri::yes &&
        w.exclusion_ok == Tri::yes)
      best = &w;  // witnesses are ordered by N, keep the largest
  if (best) {
    c.N = best->N;
    c.checks.q_product_ok = best->q_product_ok;
    c.witness_lhs_log2 = best->lhs;
    c.witness_rhs_log2 = best->rhs_witness;
    c.exclusion_rhs_log2 = best->rhs_exclusion;
  }

  bool hypotheses_ok = ev.degrees_ok == Tri::yes && ev.monic_ok == Tri::yes &&
                       ev.attains_house_ok == Tri::yes && ev.q_monotone_ok == Tri::yes;
  if (hypotheses_ok && best) {
    c.verdict = Verdict::ExcludedUpToHeight;
    c.notes.push_back(
        "exclusion scope: values whose minimal polynomial differs from that of "
        "every convergent p_n/q_n, n <= " +
        std::to_string(c.N));
    if (ev.threshold_N_star >= 0 && c.N < ev.threshold_N_star)
      c.notes.push_back(
          "witness index below the asymptotic threshold N* = " +
          std::to_string(ev.threshold_N_star) +
          "; verdict rests on the direct height-margin inequality at N = " +
          std::to_string(c.N));
  } else {
    c.verdict = Verdict::Inconclusive;
    if (ev.degrees_ok != Tri::yes) c.notes.push_back("check undecided: degrees");
    if (ev.monic_ok != Tri::yes) c.notes.push_back("check undecided: monic");
    if (ev.attains_house_ok != Tri::yes) c.notes.push_back("check undecided: attains_house");
    if (ev.q_monotone_ok != Tri::yes) c.notes.push_back("check undecided: q_monotone");
    if (!best) {
      bool some_witness = false, some_product = false;
      for (const auto& w : ev.witnesses) {
        if (w.witness_holds == Tri::yes) some_witness = true;
        if (w.witness_holds == Tri::yes && w.q_product_ok == Tri::yes &&
            w.exclusion_ok != Tri::yes)
          some_product = true;
      }
      if (!some_witness)
        c.notes.push_back("no index certified the growth inequality");
      else if (some_product)
        c.notes.push_back(
            "growth witnesses exist but none absorbs the height budget");
      else
        c.notes.push_back("no witness index with all three inequalities certified");
    }
  }
  if (ev.records.empty())
    c.notes.push_back("bounded houses: no certified growth records over the horizon");
  c.notes.push_back(ev.tail_unconditional
                        ? "tail-bound regime: unconditional (all quotients certified real >= 1)"
                        : "tail-bound regime: conditional (relies on the increasing-|q| hypothesis)");
  if (ev.threshold_budget_hit)
    c.notes.push_back("threshold scan exceeded its budget; N* not reported");
  return c;
}

inline Certificate build_certificate(const std::vector<AlgebraicNumber>& quotients, long d,
                                     long D, const mpq_class& log2_H_star, long horizon,
                                     mpfr_prec_t prec) {
  return finalize_certificate(
      gather_certificate_evidence(quotients, d, D, log2_H_star, horizon, prec));
}

}  // namespace cfcert
