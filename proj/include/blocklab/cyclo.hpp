#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "blocklab/numeric.hpp"

namespace blocklab {

using Rational = mpq_class;

namespace detail {

/// Cyclotomic polynomials Phi_n as integer coefficient vectors (low degree
/// first), computed by exact division of x^n - 1 and cached process-wide.
inline std::vector<mpz_class> cyclotomic_polynomial_uncached(i64 n,
                                                             const std::map<i64, std::vector<mpz_class>>& cache) {
  // (x^n - 1) / prod_{d | n, d < n} Phi_d, by repeated exact long division.
  std::vector<mpz_class> poly(n + 1);
  poly[0] = -1;
  poly[n] = 1;
  for (i64 d : divisors(n)) {
    if (d == n) continue;
    const std::vector<mpz_class>& phi_d = cache.at(d);
    // poly /= phi_d (exact).
    std::vector<mpz_class> q(poly.size() - phi_d.size() + 1);
    std::vector<mpz_class> r = poly;
    for (i64 i = static_cast<i64>(q.size()) - 1; i >= 0; --i) {
      q[i] = r[i + phi_d.size() - 1]; // phi_d is monic
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < phi_d.size(); ++j) r[i + j] -= q[i] * phi_d[j];
    }
    for (const auto& c : r)
      if (c != 0) throw InternalError("cyclotomic polynomial division not exact");
    poly = std::move(q);
  }
  return poly;
}

inline const std::vector<mpz_class>& cyclotomic_polynomial(i64 n) {
  static std::map<i64, std::vector<mpz_class>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  for (i64 d : divisors(n))
    if (!cache.count(d) && d < n) cache.emplace(d, cyclotomic_polynomial_uncached(d, cache));
  return cache.emplace(n, cyclotomic_polynomial_uncached(n, cache)).first->second;
}

/// In-place reduction of a rational polynomial modulo Phi_n; resizes to phi(n).
inline void reduce_mod_cyclotomic(std::vector<Rational>& poly, i64 n) {
  const std::vector<mpz_class>& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1; // = phi(n)
  while (poly.size() > deg) {
    Rational lead = poly.back();
    std::size_t top = poly.size() - 1;
    poly.pop_back();
    if (lead != 0) {
      for (std::size_t j = 0; j < deg; ++j) {
        Rational t(phi[j]);
        poly[top - deg + j] -= lead * t;
      }
    }
  }
  poly.resize(deg, Rational(0));
}

} // namespace detail

/// An exact element of Q(xi_n), stored in the power basis
/// {1, xi, ..., xi^(phi(n)-1)} reduced modulo the n-th cyclotomic polynomial.
/// The stored conductor bound n is 1, odd, or divisible by 4 (Q_{2m} = Q_m),
/// so lcm-lifting of two values never produces a conductor = 2 mod 4.
class Cyclotomic {
public:
  Cyclotomic() : n_(1), c_(1, Rational(0)) {}

  /* implicit */ Cyclotomic(const Rational& r) : n_(1), c_(1, r) {}
  /* implicit */ Cyclotomic(long v) : n_(1), c_(1, Rational(v)) {}

  /// xi_n^k.
  static Cyclotomic root_of_unity(i64 n, i64 k) {
    if (n < 1) throw DomainError("root_of_unity: n must be >= 1");
    k %= n;
    if (k < 0) k += n;
    // Minimal conductor for a pure root: xi_n^k = xi_{n/g}^{k/g}.
    i64 g = gcd_i64(k == 0 ? n : k, n);
    n /= g;
    k /= g;
    // Q_{2m} = Q_m for odd m: xi_{2m}^k = (-1)^k xi_m^{k * (m+1)/2 mod m}.
    Rational sign(1);
    if (n % 4 == 2) {
      i64 m = n / 2;
      if (k % 2 == 1) sign = -1;
      k = k % m * ((m + 1) / 2) % m;
      n = m;
    }
    Cyclotomic z;
    z.n_ = n;
    z.c_.assign(static_cast<std::size_t>(euler_phi(n)), Rational(0));
    if (static_cast<std::size_t>(k) < z.c_.size()) {
      z.c_[k] = sign;
    } else {
      std::vector<Rational> poly(k + 1, Rational(0));
      poly[k] = sign;
      detail::reduce_mod_cyclotomic(poly, n);
      z.c_ = std::move(poly);
    }
    return z;
  }

  i64 conductor_bound() const { return n_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  /// The rational value; requires is_rational().
  Rational rational_value() const {
    if (!is_rational()) throw DomainError("value is not rational");
    return c_[0];
  }

  bool is_integer() const { return is_rational() && c_[0].get_den() == 1; }

  /// All power-basis coefficients are integers (equivalent to being an
  /// algebraic integer, since Z[xi_n] is the full ring of integers).
  bool has_integral_coefficients() const {
    for (const auto& x : c_)
      if (x.get_den() != 1) return false;
    return true;
  }

  /// Re-expression at conductor m (n_ must divide m).
  Cyclotomic lifted_to(i64 m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw DomainError("cannot lift: conductor does not divide target");
    i64 step = m / n_;
    std::vector<Rational> poly(static_cast<std::size_t>((c_.size() - 1) * step + 1), Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) poly[k * step] = c_[k];
    detail::reduce_mod_cyclotomic(poly, m);
    Cyclotomic z;
    z.n_ = m;
    z.c_ = std::move(poly);
    return z;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    i64 m = lcm_i64(a.n_, b.n_);
    Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    i64 m = lcm_i64(a.n_, b.n_);
    Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }

  Cyclotomic operator-() const {
    Cyclotomic z = *this;
    for (auto& x : z.c_) x = -x;
    return z;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    i64 m = lcm_i64(a.n_, b.n_);
    Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
    std::vector<Rational> conv(x.c_.size() + y.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        conv[i + j] += x.c_[i] * y.c_[j];
      }
    }
    detail::reduce_mod_cyclotomic(conv, m);
    Cyclotomic z;
    z.n_ = m;
    z.c_ = std::move(conv);
    return z;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    i64 m = lcm_i64(a.n_, b.n_);
    return a.lifted_to(m).c_ == b.lifted_to(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Total order used for deterministic row sorting: lexicographic on the
  /// coefficient vector at the common conductor. Arbitrary but fixed.
  static int compare(const Cyclotomic& a, const Cyclotomic& b) {
    i64 m = lcm_i64(a.n_, b.n_);
    Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      int c = cmp(x.c_[i], y.c_[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  /// Image under the exponent map xi_n -> xi_n^j (gcd(j, n_) = 1 required).
  Cyclotomic galois_image(i64 j) const {
    j %= n_;
    if (j < 0) j += n_;
    if (gcd_i64(j, n_) != 1) throw DomainError("galois_image: exponent not coprime to conductor");
    if (j == 1 % n_) return *this;
    std::vector<Rational> poly(n_, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) poly[static_cast<std::size_t>(j * static_cast<i64>(k) % n_)] += c_[k];
    detail::reduce_mod_cyclotomic(poly, n_);
    Cyclotomic z;
    z.n_ = n_;
    z.c_ = std::move(poly);
    return z;
  }

  Cyclotomic conjugate() const { return galois_image(n_ - 1); }

  /// Least m with this value in Q(xi_m); never = 2 mod 4.
  i64 conductor() const {
    for (i64 d : divisors(n_)) {
      if (d % 4 == 2) continue;
      bool invariant = true;
      for (i64 j = 2; j <= n_ && invariant; ++j) {
        if (gcd_i64(j, n_) != 1 || j % d != 1 % d) continue;
        if (galois_image(j) != *this) invariant = false;
      }
      if (invariant) return d;
    }
    return n_;
  }

  /// Re-expressed at its minimal conductor (exact round trip by construction).
  Cyclotomic minimized() const {
    i64 d = conductor();
    if (d == n_) return *this;
    // Solve for coordinates in the basis {xi_n^(t * n/d) reduced : t < phi(d)}.
    std::size_t rows = c_.size();
    std::size_t cols = static_cast<std::size_t>(euler_phi(d));
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t t = 0; t < cols; ++t) {
      Cyclotomic basis = root_of_unity(n_, static_cast<i64>(t) * (n_ / d)).lifted_to(n_);
      for (std::size_t r = 0; r < rows; ++r) a[r][t] = basis.c_[r];
    }
    for (std::size_t r = 0; r < rows; ++r) a[r][cols] = c_[r];
    // Gaussian elimination; the system is consistent by construction.
    std::vector<Rational> sol(cols, Rational(0));
    std::size_t row = 0;
    std::vector<int> pivot_of_col(cols, -1);
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
      std::size_t pr = row;
      while (pr < rows && a[pr][col] == 0) ++pr;
      if (pr == rows) continue;
      std::swap(a[pr], a[row]);
      Rational inv = a[row][col];
      for (auto& x : a[row]) x /= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || a[r][col] == 0) continue;
        Rational f = a[r][col];
        for (std::size_t cidx = col; cidx <= cols; ++cidx) a[r][cidx] -= f * a[row][cidx];
      }
      pivot_of_col[col] = static_cast<int>(row);
      ++row;
    }
    for (std::size_t col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0) sol[col] = a[pivot_of_col[col]][cols];
    Cyclotomic z;
    z.n_ = d;
    z.c_ = std::move(sol);
    if (z.lifted_to(n_).c_ != c_) throw InternalError("conductor minimization round trip failed");
    return z;
  }

  /// Non-authoritative floating approximation, for report rendering only.
  std::complex<double> approx() const {
    std::complex<double> z(0.0, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(n_);
      z += c_[k].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
  }

  /// Rendering: rationals as plain integers or "a/b", irrational values as
  /// "Cyc(n)[c0,c1,...]" plus a decimal approximation.
  std::string str() const {
    Cyclotomic m = minimized();
    std::ostringstream os;
    if (m.n_ == 1) {
      os << m.c_[0];
      return os.str();
    }
    os << "Cyc(" << m.n_ << ")[";
    for (std::size_t i = 0; i < m.c_.size(); ++i) {
      if (i) os << ',';
      os << m.c_[i];
    }
    os << ']';
    std::complex<double> a = m.approx();
    os << " ~ ";
    os.precision(6);
    if (std::abs(a.imag()) < 1e-9) {
      os << a.real();
    } else {
      os << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
    }
    return os.str();
  }

  /// Canonical serialization for the table cache: "n;c0,c1,...".
  std::string serialize() const {
    std::ostringstream os;
    os << n_ << ';';
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ',';
      os << c_[i];
    }
    return os.str();
  }

  static Cyclotomic deserialize(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw ParseError("bad cyclotomic literal");
    Cyclotomic z;
    z.n_ = std::stoll(s.substr(0, semi));
    if (z.n_ < 1 || z.n_ % 4 == 2) throw ParseError("bad cyclotomic conductor");
    z.c_.clear();
    std::istringstream is(s.substr(semi + 1));
    std::string tok;
    while (std::getline(is, tok, ',')) z.c_.emplace_back(tok);
    if (static_cast<i64>(z.c_.size()) != euler_phi(z.n_))
      throw ParseError("bad cyclotomic coefficient count");
    for (auto& x : z.c_) x.canonicalize();
    return z;
  }

private:
  i64 n_;
  std::vector<Rational> c_;
};

inline Cyclotomic root_of_unity(i64 n, i64 k) { return Cyclotomic::root_of_unity(n, k); }

/// The ring automorphism xi_N -> xi_N^exponent of Q(xi_N), restricting to any
/// subfield Q(xi_n) with n | N.
struct GaloisMap {
  i64 modulus = 1;
  i64 exponent = 1;

  GaloisMap() = default;
  GaloisMap(i64 n, i64 j) : modulus(n), exponent(((j % n) + n) % n) {
    if (n < 1) throw DomainError("GaloisMap: modulus must be >= 1");
    if (gcd_i64(exponent, modulus) != 1)
      throw DomainError("GaloisMap: exponent must be coprime to the modulus");
  }

  bool is_identity() const { return exponent == 1 % modulus; }

  Cyclotomic apply(const Cyclotomic& a) const {
    i64 n = a.conductor_bound();
    if (n == 1) return a;
    if (modulus % n != 0)
      throw DomainError("galois_apply: value conductor does not divide the map modulus");
    return a.galois_image(exponent % n);
  }
};

/// The Galois automorphism sigma for the prime p on Q(xi_N): sends p-power
/// roots of unity to their (1+p)-th power and fixes p'-order roots.
inline GaloisMap sigma_exponent(i64 p, i64 N) {
  if (!is_prime(p)) throw DomainError("sigma_exponent: p must be prime");
  if (N < 1) throw DomainError("sigma_exponent: N must be >= 1");
  i64 pa = p_part(N, p);
  i64 m = N / pa;
  if (pa <= p) return GaloisMap(N, 1); // a <= 1: identity
  i64 j = crt((1 + p) % pa, pa, 1, m);
  return GaloisMap(N, j);
}

inline Cyclotomic galois_apply(const GaloisMap& map, const Cyclotomic& a) { return map.apply(a); }

inline i64 conductor(const Cyclotomic& a) { return a.conductor(); }

/// True iff the p-part of the conductor divides p, i.e. the value lies in
/// some Q_{pm} with p not dividing m.
inline bool almost_p_rational_value(const Cyclotomic& a, i64 p) {
  if (!is_prime(p)) throw DomainError("almost_p_rational_value: p must be prime");
  return p_part(a.conductor(), p) <= p;
}

/// True iff the conductor is coprime to p.
inline bool p_rational_value(const Cyclotomic& a, i64 p) {
  if (!is_prime(p)) throw DomainError("p_rational_value: p must be prime");
  return a.conductor() % p != 0;
}

} // namespace blocklab
