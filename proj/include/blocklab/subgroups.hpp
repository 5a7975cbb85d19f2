#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "blocklab/conjugacy.hpp"
#include "blocklab/group.hpp"

namespace blocklab {

/// A subgroup of a parent group, carried as a group on the same point set.
struct SubgroupHandle {
  const PermutationGroup* parent = nullptr;
  PermutationGroup group;

  i64 order() const { return group.order(); }
};

inline bool is_subgroup_of(const PermutationGroup& h, const PermutationGroup& g) {
  if (h.degree() != g.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

inline SubgroupHandle make_subgroup(const PermutationGroup& parent,
                                    std::vector<Permutation> gens) {
  SubgroupHandle h{&parent, PermutationGroup(parent.degree(), std::move(gens))};
  return h;
}

/// C_G(x) = {g in G : gx = xg}, by full-element scan.
inline SubgroupHandle centralizer(const PermutationGroup& g, const Permutation& x,
                                  i64 cap = kElementCap) {
  if (!g.contains(x)) throw DomainError("centralizer: element does not lie in the group");
  std::vector<Permutation> comm;
  for (const auto& y : g.elements(cap))
    if (y * x == x * y) comm.push_back(y);
  return make_subgroup(g, reduce_generators(g.degree(), comm));
}

/// N_G(H) = {g in G : H^g = H}, by full-element scan; contains H.
inline SubgroupHandle normalizer(const PermutationGroup& g, const PermutationGroup& h,
                                 i64 cap = kElementCap) {
  if (!is_subgroup_of(h, g)) throw DomainError("normalizer: H is not a subgroup of G");
  std::unordered_set<std::vector<int>, PermHash> h_elems;
  for (const auto& x : h.elements(cap)) h_elems.insert(x.images());
  std::vector<Permutation> in_norm;
  for (const auto& y : g.elements(cap)) {
    bool ok = true;
    for (const auto& s : h.generators()) {
      if (!h_elems.count(s.conjugate_by(y).images())) {
        ok = false;
        break;
      }
    }
    if (ok) in_norm.push_back(y);
  }
  return make_subgroup(g, reduce_generators(g.degree(), in_norm));
}

/// True iff some element of H has order |H|.
inline bool is_cyclic(const PermutationGroup& h, i64 cap = kElementCap) {
  i64 n = h.order();
  for (const auto& x : h.elements(cap))
    if (x.order() == n) return true;
  return false;
}

/// A Sylow p-subgroup, built by the deterministic normalizer climb: start
/// from the cyclic p-subgroup on the least p-element, enlarge inside its
/// normalizer while the order is short of the p-part of |G|.
inline SubgroupHandle sylow_subgroup(const PermutationGroup& g, i64 p, i64 cap = kElementCap) {
  if (!is_prime(p)) throw DomainError("sylow_subgroup: p must be prime");
  i64 target = p_part(g.order(), p);
  if (target == 1) return make_subgroup(g, {});
  std::vector<Permutation> all = g.elements(cap);
  std::sort(all.begin(), all.end());
  // Least element whose order is a positive power of p.
  std::optional<Permutation> seed;
  for (const auto& x : all) {
    i64 o = x.order();
    if (o > 1 && p_part(o, p) == o) {
      seed = x;
      break;
    }
  }
  if (!seed) throw InternalError("sylow_subgroup: p divides |G| but no p-element found");
  std::vector<Permutation> gens{*seed};
  PermutationGroup current(g.degree(), gens);
  while (current.order() < target) {
    SubgroupHandle norm = normalizer(g, current, cap);
    std::vector<Permutation> nelems = norm.group.elements(cap);
    std::sort(nelems.begin(), nelems.end());
    bool grew = false;
    for (const auto& x : nelems) {
      i64 o = x.order();
      if (o > 1 && p_part(o, p) == o && !current.contains(x)) {
        // current is normal in its normalizer, so <current, x> is a p-group.
        gens.push_back(x);
        current = PermutationGroup(g.degree(), gens);
        grew = true;
        break;
      }
    }
    if (!grew) throw InternalError("sylow_subgroup: normalizer climb stalled");
  }
  if (current.order() != target) throw InternalError("sylow_subgroup: overshot the p-part");
  return make_subgroup(g, reduce_generators(g.degree(), gens));
}

/// Frattini subgroup of a p-group: generated by commutators and p-th powers;
/// the quotient P/Phi(P) is elementary abelian.
inline SubgroupHandle frattini_of_p_group(const PermutationGroup& pgrp, i64 p,
                                          i64 cap = kElementCap) {
  if (!is_prime(p)) throw DomainError("frattini_of_p_group: p must be prime");
  if (p_part(pgrp.order(), p) != pgrp.order())
    throw DomainError("frattini_of_p_group: group is not a p-group");
  std::vector<Permutation> elems = pgrp.elements(cap);
  std::vector<Permutation> gens;
  for (const auto& x : elems) {
    Permutation xp = x.power(p);
    if (!xp.is_identity()) gens.push_back(xp);
  }
  for (const auto& x : pgrp.generators())
    for (const auto& y : elems) {
      Permutation comm = x.inverse() * y.inverse() * x * y;
      if (!comm.is_identity()) gens.push_back(comm);
    }
  return make_subgroup(pgrp, reduce_generators(pgrp.degree(), gens));
}

/// O_{p'}(G): the largest normal subgroup of order coprime to p, computed as
/// the join of the normal closures of conjugacy classes of p'-elements whose
/// normal closure is a p'-group.
inline SubgroupHandle p_prime_core(const PermutationGroup& g, i64 p, i64 cap = kElementCap) {
  if (!is_prime(p)) throw DomainError("p_prime_core: p must be prime");
  ConjugacyClassSet classes(g, cap);
  std::vector<Permutation> join_gens;
  for (int i = 0; i < classes.count(); ++i) {
    if (classes[i].element_order == 1 || classes[i].element_order % p == 0) continue;
    // Normal closure of the class = subgroup generated by its members.
    std::vector<Permutation> members = classes.members(i);
    std::sort(members.begin(), members.end());
    PermutationGroup closure(g.degree(), reduce_generators(g.degree(), members));
    if (closure.order() % p != 0) {
      for (const auto& x : closure.generators()) join_gens.push_back(x);
    }
  }
  return make_subgroup(g, reduce_generators(g.degree(), join_gens));
}

/// Exact normality test: every generator of N conjugated by every generator
/// of G stays inside N.
inline bool is_normal_in(const PermutationGroup& n, const PermutationGroup& g) {
  if (!is_subgroup_of(n, g)) return false;
  for (const auto& s : n.generators())
    for (const auto& x : g.generators())
      if (!n.contains(s.conjugate_by(x))) return false;
  return true;
}

/// The quotient G/N as a permutation group acting on the right cosets of N.
/// Also carries the projection G -> G/N and the chosen coset representatives.
struct QuotientGroup {
  PermutationGroup group;                  // degree = |G : N|
  std::vector<Permutation> coset_reps;     // reps[0] = identity
  const PermutationGroup* parent = nullptr;
  const PermutationGroup* kernel = nullptr;

  /// Image of g in the quotient (the permutation g induces on cosets).
  Permutation project(const Permutation& g,
                      const std::vector<Permutation>& kernel_elements) const {
    std::vector<int> im(coset_reps.size());
    for (std::size_t i = 0; i < coset_reps.size(); ++i)
      im[static_cast<int>(i)] = coset_index(coset_reps[i] * g, kernel_elements);
    return Permutation(std::move(im));
  }

  int coset_index(const Permutation& g, const std::vector<Permutation>& kernel_elements) const {
    std::vector<int> key = coset_key(g, kernel_elements);
    auto it = key_to_index.find(key);
    if (it == key_to_index.end()) throw InternalError("quotient: unknown coset");
    return it->second;
  }

  static std::vector<int> coset_key(const Permutation& g,
                                    const std::vector<Permutation>& kernel_elements) {
    std::vector<int> best;
    for (const auto& n : kernel_elements) {
      std::vector<int> cand = (n * g).images();
      if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
  }

  std::unordered_map<std::vector<int>, int, PermHash> key_to_index;
};

inline constexpr i64 kQuotientDegreeCap = 5000;

inline QuotientGroup quotient_group(const PermutationGroup& g, const PermutationGroup& n,
                                    i64 cap = kElementCap) {
  if (!is_normal_in(n, g)) throw DomainError("quotient_group: N is not normal in G");
  if (n.order() == 0 || g.order() % n.order() != 0)
    throw InternalError("quotient_group: order arithmetic broke");
  i64 index = g.order() / n.order();
  if (index > kQuotientDegreeCap)
    throw ResourceError("quotient degree " + std::to_string(index) + " exceeds cap " +
                        std::to_string(kQuotientDegreeCap));
  std::vector<Permutation> kernel_elements = n.elements(cap);
  QuotientGroup q;
  q.parent = &g;
  // Enumerate cosets by BFS over generator right-multiplication; coset keyed by
  // its lexicographically least member.
  q.coset_reps.push_back(Permutation::identity(g.degree()));
  q.key_to_index.emplace(QuotientGroup::coset_key(q.coset_reps[0], kernel_elements), 0);
  for (std::size_t i = 0; i < q.coset_reps.size(); ++i) {
    for (const auto& gen : g.generators()) {
      Permutation next = q.coset_reps[i] * gen;
      std::vector<int> key = QuotientGroup::coset_key(next, kernel_elements);
      if (!q.key_to_index.count(key)) {
        q.key_to_index.emplace(std::move(key), static_cast<int>(q.coset_reps.size()));
        q.coset_reps.push_back(next);
      }
    }
  }
  if (static_cast<i64>(q.coset_reps.size()) != index)
    throw InternalError("quotient_group: coset enumeration disagrees with index");
  // Generator images on cosets.
  std::vector<Permutation> qgens;
  for (const auto& gen : g.generators()) {
    std::vector<int> im(q.coset_reps.size());
    for (std::size_t i = 0; i < q.coset_reps.size(); ++i)
      im[static_cast<int>(i)] = q.coset_index(q.coset_reps[i] * gen, kernel_elements);
    qgens.emplace_back(std::move(im));
  }
  q.group = PermutationGroup(static_cast<int>(index), std::move(qgens));
  if (q.group.order() != index)
    throw DomainError("quotient_group: coset action kernel is larger than N");
  return q;
}

/// p-part / p'-part factorization of g: returns (g_p, g_p') with
/// g = g_p * g_p' = g_p' * g_p, o(g_p) a p-power and p not dividing o(g_p').
inline std::pair<Permutation, Permutation> p_decomposition(const Permutation& g, i64 p) {
  i64 m = g.order();
  i64 pk = p_part(m, p);
  i64 mp = m / pk;
  // a = 1 mod p^k, a = 0 mod m'; b = 0 mod p^k, b = 1 mod m'.
  i64 a = (pk == 1) ? 0 : crt(1, pk, 0, mp);
  i64 b = (pk == 1) ? 1 : crt(0, pk, 1, mp);
  return {g.power(a), g.power(b)};
}

} // namespace blocklab
