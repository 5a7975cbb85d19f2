#pragma once

#include <vector>

#include "blocklab/numeric.hpp"

namespace blocklab {

/// Dense linear algebra over F_ell for the class-matrix eigenvector method.
/// ell is a machine-word prime, entries are canonical representatives.
namespace fp {

using Mat = std::vector<std::vector<i64>>;
using Vec = std::vector<i64>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, Vec(c, 0)); }

inline Vec mat_vec(const Mat& a, const Vec& v, i64 ell) {
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    i64 acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      acc = (acc + mul_mod(a[i][j], v[j], ell)) % ell;
    out[i] = acc;
  }
  return out;
}

/// Row-reduces m in place; returns the pivot column of each reduced row.
inline std::vector<int> rref(Mat& m, i64 ell) {
  std::vector<int> pivots;
  std::size_t rows = m.size();
  if (rows == 0) return pivots;
  std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pr = row;
    while (pr < rows && m[pr][col] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(m[pr], m[row]);
    i64 inv = inv_mod(m[row][col], ell);
    for (std::size_t j = col; j < cols; ++j) m[row][j] = mul_mod(m[row][j], inv, ell);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      i64 f = m[r][col];
      for (std::size_t j = col; j < cols; ++j)
        m[r][j] = ((m[r][j] - mul_mod(f, m[row][j], ell)) % ell + ell) % ell;
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row, Vec(cols, 0));
  return pivots;
}

/// Kernel basis of m (as row vectors), in ascending free-column order.
inline Mat kernel(Mat m, i64 ell) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<int> pivots = rref(m, ell);
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i]] = static_cast<int>(i);
  Mat basis;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    Vec v(cols, 0);
    v[fc] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      int pr = pivot_of_col[c];
      if (pr >= 0) v[c] = (ell - m[pr][fc] % ell) % ell;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial (monic, low-degree-first coefficients) of a
/// square matrix, by similarity reduction to upper Hessenberg form and the
/// principal-minor recurrence.
inline Vec charpoly(Mat a, i64 ell) {
  std::size_t n = a.size();
  if (n == 0) return {1};
  // Reduce to upper Hessenberg by similarity transformations.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && a[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(a[piv], a[j + 1]);
      for (std::size_t r = 0; r < n; ++r) std::swap(a[r][piv], a[r][j + 1]);
    }
    i64 inv = inv_mod(a[j + 1][j], ell);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (a[i][j] == 0) continue;
      i64 f = mul_mod(a[i][j], inv, ell);
      for (std::size_t c = 0; c < n; ++c)
        a[i][c] = ((a[i][c] - mul_mod(f, a[j + 1][c], ell)) % ell + ell) % ell;
      for (std::size_t r = 0; r < n; ++r)
        a[r][j + 1] = (a[r][j + 1] + mul_mod(f, a[r][i], ell)) % ell;
    }
  }
  // p_m(x) = (x - h_mm) p_{m-1}(x) - sum_k h_{k,m} (prod subdiagonals) p_{k-1}(x).
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Vec cur(m + 1, 0);
    i64 hmm = a[m - 1][m - 1];
    for (std::size_t t = 0; t < p[m - 1].size(); ++t) {
      cur[t + 1] = (cur[t + 1] + p[m - 1][t]) % ell;
      cur[t] = ((cur[t] - mul_mod(hmm, p[m - 1][t], ell)) % ell + ell) % ell;
    }
    i64 subprod = 1;
    for (std::size_t k = m - 1; k >= 1; --k) {
      subprod = mul_mod(subprod, a[k][k - 1], ell);
      if (subprod == 0) break;
      i64 coef = mul_mod(a[k - 1][m - 1], subprod, ell);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < p[k - 1].size(); ++t)
        cur[t] = ((cur[t] - mul_mod(coef, p[k - 1][t], ell)) % ell + ell) % ell;
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

inline i64 eval_poly(const Vec& poly, i64 x, i64 ell) {
  i64 acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = (mul_mod(acc, x, ell) + poly[i]) % ell;
  return acc;
}

/// All roots in F_ell, ascending (no multiplicities).
inline Vec poly_roots(const Vec& poly, i64 ell) {
  Vec roots;
  for (i64 x = 0; x < ell; ++x)
    if (eval_poly(poly, x, ell) == 0) roots.push_back(x);
  return roots;
}

} // namespace fp

/// Arithmetic in F_{p^d} = F_p[x]/(m(x)) with elements as coefficient vectors
/// of length d, used for the block-linkage reduction of central characters.
class GFq {
public:
  using Elem = std::vector<int>;

  GFq(i64 p, int d) : p_(p), d_(d) {
    if (d_ < 1 || d_ > 40) throw ResourceError("GFq: extension degree out of range");
    modpoly_ = least_irreducible(p, d);
  }

  i64 p() const { return p_; }
  int degree() const { return d_; }

  Elem zero() const { return Elem(d_, 0); }
  Elem one() const {
    Elem e(d_, 0);
    e[0] = 1;
    return e;
  }

  Elem from_int(i64 v) const {
    v %= p_;
    if (v < 0) v += p_;
    Elem e(d_, 0);
    e[0] = static_cast<int>(v);
    return e;
  }

  /// Element with coefficient vector given by `code` in base p, lowest first.
  Elem from_code(i64 code) const {
    Elem e(d_, 0);
    for (int i = 0; i < d_ && code > 0; ++i) {
      e[i] = static_cast<int>(code % p_);
      code /= p_;
    }
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = static_cast<int>((a[i] + b[i]) % p_);
    return c;
  }

  Elem scalar_mul(i64 s, const Elem& a) const {
    s %= p_;
    if (s < 0) s += p_;
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = static_cast<int>(s * a[i] % p_);
    return c;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<i64> conv(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < d_; ++j) conv[i + j] = (conv[i + j] + static_cast<i64>(a[i]) * b[j]) % p_;
    }
    // Reduce modulo the monic modpoly.
    for (int k = 2 * d_ - 2; k >= d_; --k) {
      i64 lead = conv[k] % p_;
      if (lead == 0) continue;
      conv[k] = 0;
      for (int j = 0; j < d_; ++j)
        conv[k - d_ + j] = ((conv[k - d_ + j] - lead * modpoly_[j]) % p_ + p_) % p_;
    }
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = static_cast<int>(conv[i]);
    return c;
  }

  Elem pow(Elem base, i64 e) const {
    Elem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_zero(const Elem& a) const {
    for (int x : a)
      if (x != 0) return false;
    return true;
  }

  /// True iff a has multiplicative order exactly n.
  bool has_order(const Elem& a, i64 n) const {
    if (is_zero(a)) return false;
    if (pow(a, n) != one()) return false;
    for (auto [q, e] : factorize(n))
      if (pow(a, n / q) == one()) return false;
    return true;
  }

  /// Deterministic primitive n-th root: the element of order n least in the
  /// base-p code order. Exists whenever n | p^d - 1.
  Elem primitive_root_of_order(i64 n) const {
    i64 cap = ipow_cap(p_, d_);
    for (i64 code = 1; code < cap; ++code) {
      Elem e = from_code(code);
      if (has_order(e, n)) return e;
    }
    throw InternalError("GFq: no element of the requested order");
  }

  const std::vector<int>& modulus_poly() const { return modpoly_; }

private:
  i64 p_;
  int d_;
  std::vector<int> modpoly_; // monic of degree d, stored as low-first c0..c_{d-1} (lead 1 implicit)

  static i64 ipow_cap(i64 p, int d) {
    i64 r = 1;
    for (int i = 0; i < d; ++i) {
      if (r > (i64)4e18 / p) return (i64)4e18;
      r *= p;
    }
    return r;
  }

  /// Least monic irreducible polynomial of degree d over F_p by coefficient
  /// code; Rabin irreducibility test: x^(p^d) = x mod f and
  /// gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
  static std::vector<int> least_irreducible(i64 p, int d) {
    if (d == 1) return {0}; // f = x
    auto polymulmod = [&](const std::vector<i64>& a, const std::vector<i64>& b,
                          const std::vector<int>& f) {
      std::vector<i64> conv(2 * d - 1, 0);
      for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) conv[i + j] = (conv[i + j] + a[i] * b[j]) % p;
      }
      for (int k = 2 * d - 2; k >= d; --k) {
        i64 lead = conv[k];
        if (lead == 0) continue;
        conv[k] = 0;
        for (int j = 0; j < d; ++j) conv[k - d + j] = ((conv[k - d + j] - lead * f[j]) % p + p) % p;
      }
      conv.resize(d);
      return conv;
    };
    auto xpow = [&](mpz_class e, const std::vector<int>& f) {
      std::vector<i64> result(d, 0), base(d, 0);
      result[0] = 1;
      base[1] = 1;
      while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = polymulmod(result, base, f);
        base = polymulmod(base, base, f);
        e >>= 1;
      }
      return result;
    };
    auto trim = [](std::vector<i64> v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
      return v;
    };
    auto polymod = [&](std::vector<i64> a, std::vector<i64> b) {
      b = trim(std::move(b));
      a = trim(std::move(a));
      if (b.empty()) throw InternalError("poly mod by zero");
      i64 lead_inv = inv_mod(b.back(), p);
      while (a.size() >= b.size()) {
        i64 f0 = mul_mod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
          a[shift + j] = ((a[shift + j] - f0 * b[j]) % p + p) % p;
        a = trim(std::move(a));
        if (a.empty()) break;
      }
      return a;
    };
    auto polygcd_is_one = [&](std::vector<i64> a, std::vector<i64> b) {
      a = trim(std::move(a));
      b = trim(std::move(b));
      while (!b.empty()) {
        std::vector<i64> r = polymod(a, b);
        a = std::move(b);
        b = std::move(r);
      }
      return a.size() == 1;
    };
    mpz_class q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    std::vector<i64> x_vec(d, 0);
    x_vec[1] = 1;
    for (i64 code = 0;; ++code) {
      std::vector<int> f(d);
      i64 c = code;
      for (int i = 0; i < d; ++i) {
        f[i] = static_cast<int>(c % p);
        c /= p;
      }
      if (c > 0) throw InternalError("GFq: no irreducible polynomial found");
      if (f[0] == 0) continue; // reducible: x divides
      if (xpow(q, f) != x_vec) continue;
      std::vector<i64> f_full(d + 1, 0);
      for (int i = 0; i < d; ++i) f_full[i] = f[i];
      f_full[d] = 1;
      bool ok = true;
      for (auto [r, e] : factorize(d)) {
        mpz_class qq = 1;
        for (int i = 0; i < d / r; ++i) qq *= p;
        std::vector<i64> g = xpow(qq, f); // x^(p^(d/r)) mod f
        g[1] = ((g[1] - 1) % p + p) % p;  // minus x
        if (!polygcd_is_one(f_full, g)) {
          ok = false;
          break;
        }
      }
      if (ok) return f;
    }
  }
};

} // namespace blocklab
