// fanstalk: exact arithmetic primitives — big integers/rationals, integer
// vectors, roots, primality and factorization.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_NUMERIC_HPP
#define FANSTALK_NUMERIC_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fanstalk/error.hpp"

namespace fanstalk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense integer vector; the workhorse for exponents, rays and facet normals.
using IntVec = std::vector<Int>;

inline Int igcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

/// gcd of all entries (nonnegative; 0 for the zero vector).
inline Int content(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = igcd(g, x);
  return g;
}

inline bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

/// Divides out the content.  The zero vector has no primitive representative.
inline IntVec primitive(const IntVec& v) {
  Int g = content(v);
  if (g == 0) throw Error(ErrorKind::ZeroVector, "zero vector has no primitive form");
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return w;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "sum of unequal lengths");
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "difference of unequal lengths");
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline IntVec negate(const IntVec& a) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline IntVec scale(const Int& t, const IntVec& a) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = t * a[i];
  return c;
}

/// Componentwise minimum.
inline IntVec vmin(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "min of unequal lengths");
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::min(a[i], b[i]);
  return c;
}

inline bool all_nonnegative(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x >= 0; });
}

/// Indices with nonzero entry (0-based).
inline std::vector<std::size_t> support(const IntVec& v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

inline IntVec unit_vector(std::size_t dim, std::size_t i) {
  IntVec e(dim, Int(0));
  e[i] = 1;
  return e;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Colexicographic order: compares the last coordinate first.  This is the
/// column order of stacky-fan matrices (it reproduces the worked examples'
/// column layouts, which plain lex does not).
/// base^e for integer e >= 0 by binary exponentiation.
inline Rat rat_pow(const Rat& base, const Int& e) {
  Rat r = 1, b = base;
  Int k = e;
  while (k > 0) {
    if (boost::multiprecision::bit_test(k, 0)) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline bool colex_less(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

/// Exact nonnegative integer k-th root: returns r with r^k = n, or nothing.
inline std::optional<Int> exact_kth_root(const Int& n, unsigned k) {
  if (k == 0) return std::nullopt;
  if (n < 0) return std::nullopt;
  if (n == 0 || n == 1 || k == 1) return n;
  // Newton iteration on integers, then verify exactly.
  Int x = 1;
  Int hi = n;
  while (x < hi) {
    Int mid = (x + hi + 1) / 2;
    Int p = 1;
    bool over = false;
    for (unsigned i = 0; i < k; ++i) {
      p *= mid;
      if (p > n) { over = true; break; }
    }
    if (over) hi = mid - 1; else x = mid;
  }
  Int p = 1;
  for (unsigned i = 0; i < k; ++i) p *= x;
  if (p == n) return x;
  return std::nullopt;
}

/// Exact rational k-th root honoring sign: odd k may root negatives.
inline std::optional<Rat> exact_kth_root(const Rat& q, unsigned k) {
  Int num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg && k % 2 == 0) return std::nullopt;
  auto rn = exact_kth_root(neg ? Int(-num) : num, k);
  auto rd = exact_kth_root(den, k);
  if (!rn || !rd) return std::nullopt;
  Rat r(*rn, *rd);
  return neg ? Rat(-r) : r;
}

/// p-adic valuation of a nonzero rational (negative when p divides the
/// denominator).
inline long padic_valuation(const Rat& q, const Int& p) {
  if (q == 0) throw Error(ErrorKind::ZeroVector, "valuation of zero");
  long v = 0;
  Int n = numerator(q);
  if (n < 0) n = -n;
  while (n % p == 0) { n /= p; ++v; }
  Int d = denominator(q);
  while (d % p == 0) { d /= p; --v; }
  return v;
}

/// Image of a p-unit rational in F_p, as a value in [0, p).  Requires the
/// denominator to be prime to p.
inline Int mod_p(const Rat& q, const Int& p) {
  Int n = numerator(q) % p;
  if (n < 0) n += p;
  Int d = denominator(q) % p;
  if (d < 0) d += p;
  if (d == 0)
    throw Error(ErrorKind::BadCharacteristic, "denominator not a unit modulo p");
  // Invert d modulo p by extended Euclid.
  Int t = 0, t_next = 1, r = p, r_next = d;
  while (r_next != 0) {
    Int quot = r / r_next;
    Int t_new = t - quot * t_next;
    Int r_new = r - quot * r_next;
    t = t_next; t_next = t_new;
    r = r_next; r_next = r_new;
  }
  if (t < 0) t += p;
  return (n * t) % p;
}

// ---------------------------------------------------------------------------
// Primality and factorization (for problematic-prime extraction).
// ---------------------------------------------------------------------------

namespace detail {

inline Int mulmod(const Int& a, const Int& b, const Int& m) { return (a * b) % m; }

inline Int powmod(Int base, Int exp, const Int& m) {
  Int r = 1;
  base %= m;
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline bool miller_rabin_witness(const Int& n, const Int& a) {
  if (a % n == 0) return false;
  Int d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) { d >>= 1; ++s; }
  Int x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true; // a witnesses compositeness
}

} // namespace detail

/// Miller–Rabin with the first twelve prime bases — deterministic for all
/// inputs below 3.3e24, far beyond any subset minor this library produces.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (detail::miller_rabin_witness(n, a)) return false;
  return true;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  Int x = 2, y = 2, c = 1, d = 1;
  while (true) {
    x = 2; y = 2; d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = igcd(diff, n);
    }
    if (d != 1 && d != n) return d;
    ++c; // cycle hit a fixed point; retry with a shifted iteration
  }
}

inline void factor_into(const Int& n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (is_prime(n)) { primes.push_back(n); return; }
  Int d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

} // namespace detail

/// Distinct prime divisors of |n|, sorted ascending.  Trial division up to
/// 10^6 first, then Miller–Rabin/Pollard rho on the cofactor.
inline std::vector<Int> prime_divisors(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> primes;
  if (n <= 1) return primes;
  for (Int p = 2; p <= 1000000 && p * p <= n; p == 2 ? p = 3 : p += 2) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) detail::factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

/// Exact rational as "p" or "p/q" (canonical reduced form).
inline std::string rat_to_string(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  std::string s = n.str();
  if (d != 1) s += "/" + d.str();
  return s;
}

} // namespace fanstalk

#endif // FANSTALK_NUMERIC_HPP
