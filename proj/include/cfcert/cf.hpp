#pragma once

#include <optional>
#include <vector>

#include "cfcert/profile.hpp"

namespace cfcert {

/// One convergent of the recurrence q_{n+2} = alpha_{n+2} q_{n+1} + q_n,
/// p_{n+2} = alpha_{n+2} p_{n+1} + p_n with p_0 = 0, q_0 = 1, p_1 = 1,
/// q_1 = alpha_1.  Exact values accompany the balls while every combination
/// stays under the exact degree cap.
struct ConvergentState {
  long n = 0;
  Ball p_ball, q_ball;
  std::optional<AlgebraicNumber> p_exact, q_exact;
  RealBall abs_q;
  bool rel_target_met = true;
};

struct CFTrace {
  std::vector<AlgebraicNumber> alphas;  // alpha_1 .. alpha_N
  std::vector<ConvergentState> states;  // indices 0 .. N
  long monotone_upto = 1;               // |q_1| < ... < |q_m| certified through m
  mpfr_prec_t work_prec = 64;
  Ball value;                           // p_N / q_N
  bool exact_active = true;
  long exact_degree_cap = kDefaultExactDegreeCap;

  long last_index() const { return states.empty() ? -1 : states.back().n; }
};

inline CFTrace cf_begin(long exact_degree_cap = kDefaultExactDegreeCap) {
  CFTrace t;
  t.exact_degree_cap = exact_degree_cap;
  ConvergentState s0;
  s0.n = 0;
  s0.p_ball = Ball::exact_long(0);
  s0.q_ball = Ball::exact_long(1);
  s0.p_exact = AlgebraicNumber::from_integer(0L);
  s0.q_exact = AlgebraicNumber::from_integer(1L);
  s0.abs_q = RealBall::exact_long(1);
  t.states.push_back(std::move(s0));
  t.value = Ball::exact_long(0);
  return t;
}

namespace detail {

/// Recompute every convergent ball from the exact partial quotients at
/// working precision w.  No error accumulates across calls: each recompute
/// starts from fresh alpha enclosures.
inline void recompute_balls(const std::vector<AlgebraicNumber>& alphas,
                            std::vector<Ball>& p, std::vector<Ball>& q, mpfr_prec_t w) {
  size_t N = alphas.size();
  p.assign(N + 1, Ball::exact_long(0));
  q.assign(N + 1, Ball::exact_long(1));
  if (N == 0) return;
  std::vector<Ball> av;
  av.reserve(N);
  for (const auto& a : alphas) av.push_back(a.value(w));
  p[1] = Ball::exact_long(1);
  q[1] = av[0];
  for (size_t i = 2; i <= N; ++i) {
    q[i] = add(mul(av[i - 1], q[i - 1], w), q[i - 2], w);
    p[i] = add(mul(av[i - 1], p[i - 1], w), p[i - 2], w);
  }
}

/// Certify that alpha is a real number >= 1 (used to decide whether the tail
/// bound applies unconditionally).
inline bool certified_real_ge_one(const AlgebraicNumber& a) {
  if (a.is_rational()) return a.rational_value() >= 1;
  try {
    std::vector<Ball> balls = isolate_roots_rel(a.min_poly(), 48, max_precision());
    Ball iso = a.isolator();
    size_t idx = match_root(a.min_poly(), iso, balls, max_precision());
    std::vector<Cluster> cls = classify_conjugation(a.min_poly(), balls, max_precision());
    bool real = false;
    for (const Cluster& c : cls)
      if (!c.partner && c.rep == idx) real = true;
    if (!real) return false;
    for (long bits = 64; bits <= 1024; bits *= 2) {
      Tri ge = leq(RealBall::exact_long(1), a.value(bits).real());
      if (ge != Tri::undecided) return ge == Tri::yes;
    }
  } catch (const PrecisionExhausted&) {
  }
  return false;  // unresolved: fall back to the conditional regime
}

}  // namespace detail

/// Append the next partial quotient.  All convergents are recomputed at a
/// working precision doubled until the newest q-ball has relative radius
/// below 2^(-prec/2); reaching the precision cap with 0 still inside the
/// q-ball raises QNearZero, otherwise the state is flagged.
inline CFTrace advance(const CFTrace& t, const AlgebraicNumber& alpha, mpfr_prec_t prec) {
  if (prec < 32) throw Error("advance: prec must be at least 32");
  CFTrace out = t;
  out.alphas.push_back(alpha);
  size_t N = out.alphas.size();

  mpfr_prec_t w = std::max<mpfr_prec_t>({t.work_prec, prec, 64});
  std::vector<Ball> p, q;
  bool met = false;
  auto target = rel_stop(prec / 2);
  for (;;) {
    detail::recompute_balls(out.alphas, p, q, w);
    if (!q[N].may_contain_zero() && target(q[N])) {
      met = true;
      break;
    }
    if (w >= max_precision()) {
      if (q[N].may_contain_zero())
        throw QNearZero("q_" + std::to_string(N) + " not separated from zero at precision cap");
      break;  // zero excluded but the relative target was missed: flag it
    }
    w = std::min<mpfr_prec_t>(2 * w, max_precision());
  }
  out.work_prec = w;

  // Exact companions while the degree cap and precision budget allow.  They
  // are auxiliary (the certified balls above carry the results), so resource
  // exhaustion on this path deactivates it instead of failing the advance.
  std::optional<AlgebraicNumber> pe, qe;
  if (out.exact_active) {
    if (N == 1) {
      pe = AlgebraicNumber::from_integer(1L);
      qe = alpha;
    } else {
      const ConvergentState& s1 = out.states[N - 1];
      const ConvergentState& s2 = out.states[N - 2];
      auto deactivate = [&] {
        out.exact_active = false;
        pe.reset();
        qe.reset();
      };
      try {
        qe = exact_combine(CombineOp::add,
                           exact_combine(CombineOp::mul, alpha, *s1.q_exact, out.exact_degree_cap),
                           *s2.q_exact, out.exact_degree_cap);
        pe = exact_combine(CombineOp::add,
                           exact_combine(CombineOp::mul, alpha, *s1.p_exact, out.exact_degree_cap),
                           *s2.p_exact, out.exact_degree_cap);
      } catch (const DegreeCapExceeded&) {
        deactivate();
      } catch (const PrecisionExhausted&) {
        deactivate();
      } catch (const IrreducibilityUndecided&) {
        deactivate();
      }
    }
  }

  // Rebuild the state list against the freshly computed balls.
  for (size_t i = 0; i < out.states.size(); ++i) {
    out.states[i].p_ball = p[i];
    out.states[i].q_ball = q[i];
    out.states[i].abs_q = q[i].abs(w);
  }
  ConvergentState ns;
  ns.n = static_cast<long>(N);
  ns.p_ball = p[N];
  ns.q_ball = q[N];
  ns.abs_q = q[N].abs(w);
  ns.p_exact = std::move(pe);
  ns.q_exact = std::move(qe);
  ns.rel_target_met = met;
  out.states.push_back(std::move(ns));

  long mono = 1;
  while (mono + 1 <= static_cast<long>(N) &&
         less(out.states[mono].abs_q, out.states[mono + 1].abs_q) == Tri::yes)
    ++mono;
  out.monotone_upto = mono;

  out.value = div(p[N], q[N], w);
  return out;
}

struct TailBound {
  RealBall log2_bound;  // upper enclosure of log2 1/(|q_{N+1}| |q_N|)
  bool conditional;     // true unless every alpha_n was certified real >= 1
};

/// Lemma-style truncation error after convergent N: |value - p_N/q_N| is
/// bounded by 1/(|q_{N+1}| |q_N|) whenever the partial quotients are real
/// >= 1; otherwise the same quantity is returned with `conditional` set and
/// is valid under the increasing-|q_n| convergence hypothesis.
inline TailBound tail_error_bound(const CFTrace& t, long N) {
  if (N < 0 || N + 1 > t.last_index())
    throw Error("tail_error_bound: trace does not reach index N+1");
  if (t.monotone_upto < N + 1)
    throw MonotonicityNotCertified("certified |q| chain stops at " +
                                   std::to_string(t.monotone_upto));
  const RealBall& a1 = t.states[N].abs_q;
  const RealBall& a2 = t.states[N + 1].abs_q;
  if (!a1.is_positive() || !a2.is_positive())
    throw QNearZero("tail bound with a q-ball touching zero");
  mpfr_prec_t wp = t.work_prec;
  RealBall bound = neg(add(log2(a1, wp), log2(a2, wp), wp));
  bool cond = false;
  for (long i = 0; i <= N && !cond; ++i)
    if (!detail::certified_real_ge_one(t.alphas[static_cast<size_t>(i)])) cond = true;
  return {std::move(bound), cond};
}

/// Enclosure of the full continued-fraction value from the prefix: the ball
/// of alpha(N) with N = last-1, inflated by the tail bound taken from the
/// last two convergents.  (The final truncated value itself is trace.value,
/// with no tail.)
inline Ball limit_enclosure(const CFTrace& t, mpfr_prec_t prec) {
  long M = t.last_index();
  if (M < 1) throw Error("limit_enclosure: no partial quotient yet");
  TailBound tb = tail_error_bound(t, M - 1);
  mpfr_prec_t wp = std::max<mpfr_prec_t>(prec, 64);
  Ball v = div(t.states[M - 1].p_ball, t.states[M - 1].q_ball, wp);
  Dyadic extra = Dyadic::exp2(tb.log2_bound.upper(), kRadPrec, MPFR_RNDU);
  return inflate(v, extra);
}

}  // namespace cfcert
