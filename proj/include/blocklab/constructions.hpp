#pragma once

#include <string>
#include <vector>

#include "blocklab/group.hpp"

namespace blocklab {

inline PermutationGroup cyclic_group(i64 n) {
  if (n < 1) throw DomainError("Cyclic(n): n must be >= 1");
  if (n == 1) return PermutationGroup(1, {});
  std::vector<int> im(n);
  for (i64 i = 0; i < n; ++i) im[i] = static_cast<int>((i + 1) % n);
  return PermutationGroup(static_cast<int>(n), {Permutation(std::move(im))});
}

inline PermutationGroup symmetric_group(i64 n) {
  if (n < 1) throw DomainError("Sym(n): n must be >= 1");
  if (n == 1) return PermutationGroup(1, {});
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles(static_cast<int>(n), {{1, 2}}));
  if (n > 2) {
    std::vector<int> cyc(n);
    for (i64 i = 0; i < n; ++i) cyc[i] = static_cast<int>(i + 1);
    gens.push_back(Permutation::from_cycles(static_cast<int>(n), {cyc}));
  }
  return PermutationGroup(static_cast<int>(n), std::move(gens));
}

inline PermutationGroup alternating_group(i64 n) {
  if (n < 1) throw DomainError("Alt(n): n must be >= 1");
  if (n <= 2) return PermutationGroup(static_cast<int>(n), {});
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles(static_cast<int>(n), {{1, 2, 3}}));
  if (n > 3) {
    std::vector<int> cyc;
    if (n % 2 == 1) {
      for (i64 i = 1; i <= n; ++i) cyc.push_back(static_cast<int>(i));
    } else {
      for (i64 i = 2; i <= n; ++i) cyc.push_back(static_cast<int>(i));
    }
    gens.push_back(Permutation::from_cycles(static_cast<int>(n), {cyc}));
  }
  return PermutationGroup(static_cast<int>(n), std::move(gens));
}

/// Dihedral group of order 2n in its natural action on n points.
inline PermutationGroup dihedral_group(i64 n) {
  if (n < 3) throw DomainError("Dihedral(n): n must be >= 3 for a faithful action on n points");
  std::vector<int> rot(n), refl(n);
  for (i64 i = 0; i < n; ++i) {
    rot[i] = static_cast<int>((i + 1) % n);
    refl[i] = static_cast<int>((n - i) % n);
  }
  return PermutationGroup(static_cast<int>(n),
                          {Permutation(std::move(rot)), Permutation(std::move(refl))});
}

/// Least generator of the unique order-e subgroup of F_p^x.
inline i64 least_of_order(i64 e, i64 p) {
  for (i64 j = 1; j < p; ++j)
    if (mult_order(j, p) == e) return j;
  throw InternalError("no element of the requested order mod p");
}

/// Frobenius group C_p : C_e acting on p points, with the complement acting
/// as multiplication by the least generator of the order-e subgroup of F_p^x.
inline PermutationGroup frobenius_group(i64 p, i64 e) {
  if (!is_prime(p)) throw DomainError("Frobenius(p,e): p must be prime");
  if (e < 1 || (p - 1) % e != 0) throw DomainError("Frobenius(p,e): e must divide p-1");
  i64 j = least_of_order(e, p);
  std::vector<int> add(p), mul(p);
  for (i64 i = 0; i < p; ++i) {
    add[i] = static_cast<int>((i + 1) % p);
    mul[i] = static_cast<int>(j * i % p);
  }
  std::vector<Permutation> gens{Permutation(std::move(add))};
  if (e > 1) gens.emplace_back(std::move(mul));
  return PermutationGroup(static_cast<int>(p), std::move(gens));
}

/// C_n : C_e acting on n points, with the complement acting as
/// multiplication by j; requires <j> of order exactly e in (Z/n)^x.
inline PermutationGroup semidirect_cyclic(i64 n, i64 e, i64 j) {
  if (n < 2) throw DomainError("SemidirectCyclic(n,e,j): n must be >= 2");
  j %= n;
  if (j < 0) j += n;
  if (gcd_i64(j, n) != 1) throw DomainError("SemidirectCyclic(n,e,j): j must be a unit mod n");
  if (mult_order(j, n) != e)
    throw DomainError("SemidirectCyclic(n,e,j): j must have multiplicative order exactly e mod n");
  std::vector<int> add(n), mul(n);
  for (i64 i = 0; i < n; ++i) {
    add[i] = static_cast<int>((i + 1) % n);
    mul[i] = static_cast<int>(j * i % n);
  }
  std::vector<Permutation> gens{Permutation(std::move(add))};
  if (e > 1) gens.emplace_back(std::move(mul));
  return PermutationGroup(static_cast<int>(n), std::move(gens));
}

/// Direct product acting on the disjoint union of the factors' point sets.
inline PermutationGroup direct_product(const std::vector<PermutationGroup>& factors) {
  if (factors.empty()) throw DomainError("DirectProduct: needs at least one factor");
  int degree = 0;
  for (const auto& f : factors) degree += f.degree();
  std::vector<Permutation> gens;
  int offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators()) {
      std::vector<int> im(degree);
      std::iota(im.begin(), im.end(), 0);
      for (int i = 0; i < f.degree(); ++i) im[offset + i] = offset + g(i);
      gens.emplace_back(std::move(im));
    }
    offset += f.degree();
  }
  return PermutationGroup(degree, std::move(gens));
}

/// Wreath product base wr C_k in the imprimitive action on k blocks of
/// base.degree() points.
inline PermutationGroup wreath_cyclic(const PermutationGroup& base, i64 k) {
  if (k < 1) throw DomainError("Wreath(base,k): k must be >= 1");
  int d = base.degree();
  int degree = static_cast<int>(d * k);
  std::vector<Permutation> gens;
  for (const auto& g : base.generators()) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    for (int i = 0; i < d; ++i) im[i] = g(i);
    gens.emplace_back(std::move(im));
  }
  if (k > 1) {
    std::vector<int> im(degree);
    for (i64 b = 0; b < k; ++b)
      for (int i = 0; i < d; ++i) im[b * d + i] = static_cast<int>(((b + 1) % k) * d + i);
    gens.emplace_back(std::move(im));
  }
  return PermutationGroup(degree, std::move(gens));
}

/// PSL(2,q) for prime q, acting on the q+1 points of the projective line
/// (points 0..q-1 are the field elements, point q is infinity), generated by
/// z -> z+1 and z -> -1/z.
inline PermutationGroup psl2(i64 q) {
  if (!is_prime(q)) throw DomainError("PSL2(q): q must be prime");
  int n = static_cast<int>(q + 1);
  std::vector<int> shift(n), inv(n);
  for (i64 i = 0; i < q; ++i) shift[i] = static_cast<int>((i + 1) % q);
  shift[q] = static_cast<int>(q);
  inv[0] = static_cast<int>(q);
  inv[q] = 0;
  for (i64 i = 1; i < q; ++i) inv[i] = static_cast<int>((q - inv_mod(i, q)) % q);
  return PermutationGroup(n, {Permutation(std::move(shift)), Permutation(std::move(inv))});
}

} // namespace blocklab
