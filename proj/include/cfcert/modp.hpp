#pragma once

#include <gmpxx.h>

#include <bitset>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cfcert::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

inline u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
/// The empty vector is the zero polynomial.
using Poly = std::vector<u64>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long deg(const Poly& f) { return static_cast<long>(f.size()) - 1; }

inline Poly reduce_coeffs(const std::vector<mpz_class>& c, u64 p) {
  Poly f(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    mpz_class r = c[i] % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    f[i] = r.get_ui();
  }
  trim(f);
  return f;
}

inline Poly make_monic(Poly f, u64 p) {
  trim(f);
  if (f.empty()) return f;
  u64 inv = invm(f.back(), p);
  for (auto& x : f) x = mulm(x, inv, p);
  return f;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

/// Remainder of a modulo b (b nonzero).
inline Poly rem(Poly a, const Poly& b, u64 p) {
  trim(a);
  long db = deg(b);
  u64 binv = invm(b.back(), p);
  while (deg(a) >= db) {
    u64 q = mulm(a.back(), binv, p);
    long shift = deg(a) - db;
    for (long i = 0; i <= db; ++i)
      a[static_cast<size_t>(shift + i)] =
          subm(a[static_cast<size_t>(shift + i)], mulm(q, b[static_cast<size_t>(i)], p), p);
    trim(a);
  }
  return a;
}

/// Exact quotient when b | a.
inline Poly quot(Poly a, const Poly& b, u64 p) {
  trim(a);
  long db = deg(b);
  u64 binv = invm(b.back(), p);
  if (deg(a) < db) return {};
  Poly q(static_cast<size_t>(deg(a) - db) + 1, 0);
  while (deg(a) >= db) {
    u64 c = mulm(a.back(), binv, p);
    long shift = deg(a) - db;
    q[static_cast<size_t>(shift)] = c;
    for (long i = 0; i <= db; ++i)
      a[static_cast<size_t>(shift + i)] =
          subm(a[static_cast<size_t>(shift + i)], mulm(c, b[static_cast<size_t>(i)], p), p);
    trim(a);
  }
  return q;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

inline Poly derivative(const Poly& f, u64 p) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) d[i - 1] = mulm(f[i], i % p, p);
  trim(d);
  return d;
}

inline Poly pow_mod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  base = rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = rem(mul(r, base, p), m, p);
    base = rem(mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

/// Degrees (with multiplicities) of the irreducible factors of f mod p,
/// via distinct-degree factorization.  Returns nullopt when f mod p drops
/// degree or is not squarefree, i.e. when p is unusable for the sieve.
inline std::optional<std::vector<std::pair<long, long>>> ddf_profile(
    const std::vector<mpz_class>& coeffs, u64 p) {
  Poly f = reduce_coeffs(coeffs, p);
  if (deg(f) != static_cast<long>(coeffs.size()) - 1) return std::nullopt;
  f = make_monic(std::move(f), p);
  if (gcd(f, derivative(f, p), p).size() != 1) return std::nullopt;

  std::vector<std::pair<long, long>> profile;
  Poly fs = f;
  Poly h{0, 1};  // x
  long d = 0;
  while (deg(fs) >= 2 * (d + 1)) {
    ++d;
    h = pow_mod(std::move(h), p, fs, p);
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = subm(hx[1], 1, p);
    trim(hx);
    Poly g = gcd(hx, fs, p);
    if (deg(g) > 0) {
      profile.emplace_back(d, deg(g) / d);
      fs = quot(std::move(fs), g, p);
      h = rem(std::move(h), fs, p);
    }
  }
  if (deg(fs) > 0) profile.emplace_back(deg(fs), 1);
  return profile;
}

inline constexpr size_t kMaxSieveDegree = 256;

/// Bitset of degrees realizable as sums of factor degrees from one profile.
inline std::bitset<kMaxSieveDegree + 1> degree_sums(
    const std::vector<std::pair<long, long>>& profile) {
  std::bitset<kMaxSieveDegree + 1> bits;
  bits.set(0);
  for (auto [d, count] : profile)
    for (long c = 0; c < count; ++c) bits |= bits << static_cast<size_t>(d);
  return bits;
}

/// Resultant of f and g over F_p via the Euclidean algorithm.
/// Convention: Res(f,g) = lc(f)^deg(g) * prod g(alpha_i) over roots of f.
inline u64 resultant(Poly f, Poly g, u64 p) {
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  u64 res = 1;
  bool negate = false;
  while (deg(g) > 0) {
    Poly r = rem(f, g, p);
    long df = deg(f), dg = deg(g), dr = deg(r);
    if ((df & 1) && (dg & 1)) negate = !negate;
    res = mulm(res, powm(g.back(), static_cast<u64>(df - dr), p), p);
    f = std::move(g);
    g = std::move(r);
  }
  if (g.empty()) return 0;  // common factor
  res = mulm(res, powm(g[0], static_cast<u64>(deg(f)), p), p);
  return negate ? (p - res) % p : res;
}

/// Deterministic descending sequence of 31-bit primes.
inline std::vector<u64> prime_stream(size_t count, u64 below = (1ull << 31)) {
  std::vector<u64> ps;
  mpz_class n = below - 1;
  while (ps.size() < count) {
    while (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) n -= 2;
    ps.push_back(n.get_ui());
    n -= 2;
  }
  return ps;
}

}  // namespace cfcert::modp
