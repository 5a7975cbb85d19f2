#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "blocklab/errors.hpp"

namespace blocklab {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_i64(a, b) * b;
}

/// Extended gcd: returns g and sets x, y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/// Inverse of a modulo m (m >= 1, gcd(a, m) = 1).
inline i64 inv_mod(i64 a, i64 m) {
  a %= m;
  if (a < 0) a += m;
  i64 x, y;
  i64 g = ext_gcd(a, m, x, y);
  if (g != 1) throw InternalError("inv_mod: arguments not coprime");
  x %= m;
  if (x < 0) x += m;
  return x;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((__int128)a * b % m);
}

inline i64 pow_mod(i64 base, i64 exp, i64 m) {
  base %= m;
  if (base < 0) base += m;
  i64 r = 1 % m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// CRT for two coprime moduli: x = r1 mod m1, x = r2 mod m2, 0 <= x < m1*m2.
inline i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  i64 m = m1 * m2;
  r1 %= m1;
  if (r1 < 0) r1 += m1;
  r2 %= m2;
  if (r2 < 0) r2 += m2;
  if (m1 == 1) return r2;
  if (m2 == 1) return r1;
  // x = r1 + m1 * t with t = (r2 - r1) / m1 mod m2
  i64 t = mul_mod(((r2 - r1) % m2 + m2) % m2, inv_mod(m1, m2), m2);
  return (r1 + mul_mod(m1 % m, t, m)) % m;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> f;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      f.emplace_back(d, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> ds;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

/// p-adic valuation of n (n != 0).
inline int valuation(i64 n, i64 p) {
  if (n == 0) throw InternalError("valuation of 0");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// The p-part of n: largest power of p dividing n.
inline i64 p_part(i64 n, i64 p) {
  i64 q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
inline i64 mult_order(i64 a, i64 m) {
  if (m == 1) return 1;
  a %= m;
  if (a < 0) a += m;
  if (gcd_i64(a, m) != 1) throw DomainError("mult_order: arguments not coprime");
  i64 x = a % m, k = 1;
  while (x != 1 % m) {
    x = mul_mod(x, a, m);
    ++k;
  }
  return k;
}

} // namespace blocklab
