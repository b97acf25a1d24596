#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bitset>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "cfcert/ball.hpp"
#include "cfcert/errors.hpp"
#include "cfcert/modp.hpp"

namespace cfcert {

/// Polynomial over Z, dense ascending coefficients, trailing zeros stripped.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<long> asc) {
    for (long v : asc) c_.emplace_back(v);
    trim();
  }
  explicit IntPolynomial(std::vector<mpz_class> asc) : c_(std::move(asc)) { trim(); }

  static IntPolynomial zero() { return {}; }
  static IntPolynomial constant(mpz_class v) {
    IntPolynomial p;
    p.c_.push_back(std::move(v));
    p.trim();
    return p;
  }
  /// x - r
  static IntPolynomial linear_root(const mpz_class& r) {
    IntPolynomial p;
    p.c_ = {-r, 1};
    return p;
  }
  /// q*x - p, the minimal polynomial shape for the rational p/q.
  static IntPolynomial rational_root(const mpq_class& v) {
    IntPolynomial p;
    p.c_ = {-v.get_num(), v.get_den()};
    return p;
  }

  /// Exact interpolation through (xs[i], ys[i]) with distinct nodes; the
  /// interpolant must have integer coefficients.
  static IntPolynomial interpolate(const std::vector<mpq_class>& xs,
                                   const std::vector<mpq_class>& ys) {
    size_t n = xs.size();
    if (n == 0 || ys.size() != n) throw Error("interpolate: bad node count");
    std::vector<mpq_class> dd = ys;  // divided differences, in place
    for (size_t j = 1; j < n; ++j)
      for (size_t i = n - 1; i >= j; --i)
        dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    // Horner over the Newton basis.
    std::vector<mpq_class> acc{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
      acc.insert(acc.begin(), mpq_class(0));
      for (size_t k = 0; k + 1 < acc.size(); ++k) acc[k] -= xs[i] * acc[k + 1];
      acc[0] += dd[i];
    }
    std::vector<mpz_class> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) {
      acc[i].canonicalize();
      if (acc[i].get_den() != 1) throw Error("interpolate: non-integer coefficient");
      out[i] = acc[i].get_num();
    }
    return IntPolynomial(std::move(out));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const mpz_class& lead() const { return c_.back(); }
  const mpz_class& operator[](size_t i) const { return c_[i]; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }

  // --- ring operations -------------------------------------------------------

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] += b.c_[i];
    }
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] -= b.c_[i];
    }
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator*(const mpz_class& s, const IntPolynomial& a) {
    if (s == 0) return {};
    std::vector<mpz_class> r = a.c_;
    for (auto& x : r) x *= s;
    return IntPolynomial(std::move(r));
  }

  IntPolynomial operator-() const {
    std::vector<mpz_class> r = c_;
    for (auto& x : r) x = -x;
    return IntPolynomial(std::move(r));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPolynomial(std::move(r));
  }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  /// Content removed and leading coefficient made positive.
  IntPolynomial primitive() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lead() < 0) g = -g;
    std::vector<mpz_class> r = c_;
    for (auto& x : r) x /= g;
    return IntPolynomial(std::move(r));
  }

  // --- substitutions -----------------------------------------------------------

  /// p(-x)
  IntPolynomial negate_var() const {
    std::vector<mpz_class> r = c_;
    for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPolynomial(std::move(r));
  }

  /// x^deg * p(1/x) (reversal); p(0) must be nonzero to preserve degree.
  IntPolynomial reverse() const {
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(r));
  }

  /// den^deg * p(x - num/den): integer polynomial vanishing at root + num/den.
  IntPolynomial shift_root(const mpq_class& by) const {
    if (is_zero()) return {};
    size_t n = c_.size();
    std::vector<mpq_class> b(c_.begin(), c_.end());
    mpq_class neg = -by;
    // Taylor shift: repeatedly fold in the evaluation point.
    for (size_t k = 0; k + 1 < n; ++k)
      for (size_t j = n - 1; j > k; --j) b[j - 1] += neg * b[j];
    // b now holds coefficients of p(x - by); clear denominators.
    mpz_class den = 1;
    for (auto& q : b) {
      q.canonicalize();
      mpz_class d = q.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> r(n);
    for (size_t i = 0; i < n; ++i) {
      mpq_class v = b[i] * den;
      r[i] = v.get_num();  // exact by construction
    }
    return IntPolynomial(std::move(r));
  }

  /// Integer polynomial vanishing at root * (num/den), num != 0.
  IntPolynomial scale_root(const mpq_class& by) const {
    if (by == 0) throw ZeroInput("scale_root by zero");
    if (is_zero()) return {};
    size_t n = c_.size();
    mpz_class num = by.get_num(), den = by.get_den();
    // coefficient i of p(x*den/num) * num^(n-1) is c_i * num^(n-1-i) * den^i
    std::vector<mpz_class> r(n);
    mpz_class np = 1;
    for (size_t i = 0; i < n; ++i) {
      size_t j = n - 1 - i;  // power of num = i applied to descending index
      r[j] = c_[j] * np;
      np *= num;
    }
    mpz_class dp = 1;
    for (size_t i = 0; i < n; ++i) {
      r[i] *= dp;
      dp *= den;
    }
    return IntPolynomial(std::move(r));
  }

  // --- evaluation ----------------------------------------------------------------

  mpz_class eval_mpz(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  mpq_class eval_mpq(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Exact sign of p at a dyadic point.
  int sign_at(const Dyadic& x) const {
    if (is_zero()) return 0;
    mpq_class v = eval_mpq(x.to_mpq());
    return sgn(v);
  }

  /// Enclosure of p over a complex disk (Horner in ball arithmetic).
  Ball eval_ball(const Ball& z, mpfr_prec_t prec) const {
    Ball acc = Ball::exact_long(0);
    for (size_t i = c_.size(); i-- > 0;) {
      acc = mul(acc, z, prec);
      acc = add_mpz(acc, c_[i], prec);
    }
    return acc;
  }

  /// Enclosure of p over a real interval.
  RealBall eval_real(const RealBall& x, mpfr_prec_t prec) const {
    RealBall acc = RealBall::exact_long(0);
    for (size_t i = c_.size(); i-- > 0;) {
      acc = mul(acc, x, prec);
      acc = add(acc, RealBall::exact_mpz(c_[i]), prec);
    }
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      mpz_class a = c_[i];
      if (!s.empty()) {
        s += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      } else if (a < 0) {
        s += "-";
        a = -a;
      }
      if (i == 0 || a != 1) s += a.get_str();
      if (i > 0) {
        if (a != 1) s += "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

// --- division and gcd ------------------------------------------------------

/// Quotient of a/b over Q[x] if the division is exact with an integer
/// quotient; nullopt otherwise.
inline std::optional<IntPolynomial> exact_divide(const IntPolynomial& a,
                                                 const IntPolynomial& b) {
  if (b.is_zero()) throw ZeroInput("division by zero polynomial");
  if (a.is_zero()) return IntPolynomial::zero();
  if (a.degree() < b.degree()) return std::nullopt;
  long dq = a.degree() - b.degree();
  std::vector<mpq_class> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<mpq_class> q(static_cast<size_t>(dq) + 1);
  mpq_class blead(b.lead());
  for (long k = dq; k >= 0; --k) {
    mpq_class c = rem[static_cast<size_t>(k + b.degree())] / blead;
    q[static_cast<size_t>(k)] = c;
    for (long i = 0; i <= b.degree(); ++i)
      rem[static_cast<size_t>(k + i)] -= c * b[static_cast<size_t>(i)];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  std::vector<mpz_class> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    q[i].canonicalize();
    if (q[i].get_den() != 1) return std::nullopt;
    qi[i] = q[i].get_num();
  }
  return IntPolynomial(std::move(qi));
}

/// Pseudo-remainder: lc(b)^k * a mod b for some k, up to sign.
inline IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    long shift = a.degree() - b.degree();
    IntPolynomial t = a.lead() * b;
    std::vector<mpz_class> shifted(static_cast<size_t>(shift), 0);
    for (long i = 0; i <= t.degree(); ++i) shifted.push_back(t[static_cast<size_t>(i)]);
    a = b.lead() * a - IntPolynomial(std::move(shifted));
  }
  return a;
}

/// Gcd over Z[x] (primitive PRS), leading coefficient positive.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive();
  if (b.is_zero()) return a.primitive();
  mpz_class ca = a.content(), cb = b.content(), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPolynomial A = a.primitive(), B = b.primitive();
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    IntPolynomial R = pseudo_rem(A, B).primitive();
    A = std::move(B);
    B = std::move(R);
  }
  return cg * A;
}

/// Product of the distinct irreducible factors of p (primitive, lead > 0).
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) return {};
  IntPolynomial pp = p.primitive();
  if (pp.degree() <= 1) return pp;
  IntPolynomial g = gcd(pp, pp.derivative());
  if (g.degree() == 0) return pp;
  auto q = exact_divide(pp, g);
  if (!q) throw Error("internal: squarefree division not exact");
  return q->primitive();
}

// --- resultants --------------------------------------------------------------

/// Exact resultant over Z by Chinese remaindering against 31-bit primes.
/// Convention: Res(f,g) = lc(f)^deg(g) * prod over roots alpha of f of g(alpha).
inline mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  if (f.degree() == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.lead().get_mpz_t(), static_cast<unsigned long>(g.degree()));
    return r;
  }
  if (g.degree() == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.lead().get_mpz_t(), static_cast<unsigned long>(f.degree()));
    return r;
  }
  // Hadamard-style bound on |Res| to size the prime set.
  auto log2_norm2 = [](const IntPolynomial& p) {
    mpz_class s = 0;
    for (const auto& c : p.coeffs()) s += c * c;
    return static_cast<unsigned long>(mpz_sizeinbase(s.get_mpz_t(), 2) / 2 + 1);
  };
  unsigned long bits = static_cast<unsigned long>(g.degree()) * log2_norm2(f) +
                       static_cast<unsigned long>(f.degree()) * log2_norm2(g) + 4;
  size_t want = bits / 30 + 2;
  std::vector<modp::u64> primes = modp::prime_stream(want + 16);

  mpz_class R = 0, M = 1;
  size_t used = 0;
  for (modp::u64 p : primes) {
    if (used >= want) break;
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p) ||
        mpz_divisible_ui_p(g.lead().get_mpz_t(), p))
      continue;  // degree drop: unusable prime
    modp::u64 rp = modp::resultant(modp::reduce_coeffs(f.coeffs(), p),
                                   modp::reduce_coeffs(g.coeffs(), p), p);
    // CRT lift: R <- R + M * t with t = (rp - R) / M mod p.
    mpz_class Mp = M % static_cast<unsigned long>(p);
    mpz_class Rp = R % static_cast<unsigned long>(p);
    if (Rp < 0) Rp += static_cast<unsigned long>(p);
    modp::u64 t = modp::mulm(modp::subm(rp, Rp.get_ui(), p),
                             modp::invm(Mp.get_ui(), p), p);
    R += M * t;
    M *= static_cast<unsigned long>(p);
    ++used;
  }
  if (used < want) throw SearchBudgetExceeded("prime stream exhausted in resultant");
  if (R * 2 > M) R -= M;
  return R;
}

// --- factor-degree sieve -----------------------------------------------------

/// Intersection over several primes of the realizable factor degree sums of p
/// mod that prime.  A degree k with bit unset cannot be the degree of any
/// factor of p over Z.  Degrees above modp::kMaxSieveDegree are not sieved.
inline std::bitset<modp::kMaxSieveDegree + 1> possible_factor_degrees(
    const IntPolynomial& p, size_t good_primes = 5) {
  std::bitset<modp::kMaxSieveDegree + 1> bits;
  bits.set();
  if (p.is_zero() || p.degree() > static_cast<long>(modp::kMaxSieveDegree)) return bits;
  std::vector<modp::u64> primes = modp::prime_stream(64);
  size_t good = 0;
  for (modp::u64 q : primes) {
    if (good >= good_primes) break;
    if (mpz_divisible_ui_p(p.lead().get_mpz_t(), q)) continue;
    auto profile = modp::ddf_profile(p.coeffs(), q);
    if (!profile) continue;
    bits &= modp::degree_sums(*profile);
    ++good;
  }
  for (size_t k = static_cast<size_t>(p.degree()) + 1; k <= modp::kMaxSieveDegree; ++k)
    bits.reset(k);
  return bits;
}

/// Rough log2 of |z| for heuristics (not certified).
inline double log2_abs_approx(const mpz_class& z) {
  if (z == 0) return -1e9;
  long e;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::abs(d)) + static_cast<double>(e);
}

}  // namespace cfcert
