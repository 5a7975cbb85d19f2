#pragma once

#include <optional>
#include <set>

#include "blocklab/blocks.hpp"
#include "blocklab/constructions.hpp"

namespace blocklab {

/// ceil(2 sqrt(p-1)): the least c with c^2 >= 4(p-1), pure integer arithmetic.
inline i64 ceil_bound(i64 p) {
  if (!is_prime(p)) throw DomainError("ceil_bound: p must be prime");
  i64 c = 1;
  while (c * c < 4 * (p - 1)) ++c;
  return c;
}

/// S_p = {e + (p-1)/e : e | p-1}, sorted; the minimum is a+b for the most
/// balanced factorization p-1 = ab.
inline std::vector<i64> sp_set(i64 p) {
  if (!is_prime(p)) throw DomainError("sp_set: p must be prime");
  std::set<i64> s;
  for (i64 e : divisors(p - 1)) s.insert(e + (p - 1) / e);
  if (p == 2) s.insert(2); // p-1 = 1: e = 1 gives 2
  return {s.begin(), s.end()};
}

inline i64 sp_min(i64 p) { return sp_set(p).front(); }

/// Condition (i): ceil(2 sqrt(p-1)) = e + (p-1)/e for some divisor e; the
/// witness is the smallest such divisor.
inline std::optional<i64> condition_i_witness(i64 p) {
  i64 bound = ceil_bound(p);
  for (i64 e : divisors(p - 1))
    if (e + (p - 1) / e == bound) return e;
  return std::nullopt;
}

inline bool condition_i(i64 p) { return condition_i_witness(p).has_value(); }

/// The local quotient N_G(P) / (Phi(P) O_{p'}(N_G(P))) of Theorem A(iii).
struct FrobeniusQuotient {
  QuotientGroup quotient;
  SubgroupHandle normalizer_sub;
  i64 order = 0;
};

inline FrobeniusQuotient frobenius_quotient(const PermutationGroup& g, i64 p,
                                            i64 cap = kElementCap) {
  if (g.order() % p != 0) throw DomainError("frobenius_quotient: p must divide |G|");
  SubgroupHandle syl = sylow_subgroup(g, p, cap);
  SubgroupHandle norm = normalizer(g, syl.group, cap);
  SubgroupHandle phi = frattini_of_p_group(syl.group, p, cap);
  SubgroupHandle core = p_prime_core(norm.group, p, cap);
  std::vector<Permutation> gens = phi.group.generators();
  for (const auto& x : core.group.generators()) gens.push_back(x);
  PermutationGroup product(g.degree(), reduce_generators(g.degree(), gens));
  if (!is_normal_in(product, norm.group))
    throw InternalError("Phi(P) O_{p'}(N) is not normal in N");
  FrobeniusQuotient out;
  out.quotient = quotient_group(norm.group, product, cap);
  out.normalizer_sub = std::move(norm);
  out.order = out.quotient.group.order();
  return out;
}

/// Shape test for Theorem A(iii): Q is a Frobenius group C_p : C_f with
/// f in {e, (p-1)/e}: a normal cyclic subgroup of order p, a cyclic
/// complement of order f, and the complement acting faithfully.
struct ConditionIiiShape {
  bool matches = false;
  std::optional<i64> complement_order;
  bool normal_sylow_p = false;
};

inline ConditionIiiShape condition_iii_shape(const PermutationGroup& q, i64 p, i64 e,
                                             i64 cap = kElementCap) {
  ConditionIiiShape out;
  std::set<i64> shapes{e, (p - 1) / e};
  i64 f = q.order() / p;
  if (q.order() % p != 0 || p_part(q.order(), p) != p || !shapes.count(f)) return out;
  SubgroupHandle pins = sylow_subgroup(q, p, cap);
  if (pins.order() != p) return out;
  out.normal_sylow_p = is_normal_in(pins.group, q);
  if (!out.normal_sylow_p) return out;
  if (f == 1) {
    out.matches = true;
    out.complement_order = 1;
    return out;
  }
  // Cyclic complement with trivial centralizer action on the normal C_p.
  std::vector<Permutation> pelems = pins.group.elements(cap);
  std::vector<Permutation> elems = q.elements(cap);
  std::sort(elems.begin(), elems.end());
  for (const auto& y : elems) {
    if (y.order() != f) continue;
    PermutationGroup comp(q.degree(), {y});
    bool meets_trivially = true;
    for (const auto& x : pelems)
      if (!x.is_identity() && comp.contains(x)) meets_trivially = false;
    if (!meets_trivially) continue;
    // Frobenius condition: no nontrivial complement element centralizes C_p.
    bool faithful = true;
    for (const auto& c : comp.elements(cap)) {
      if (c.is_identity()) continue;
      bool centralizes = true;
      for (const auto& x : pins.group.generators())
        if (c * x != x * c) centralizes = false;
      if (centralizes) {
        faithful = false;
        break;
      }
    }
    if (faithful) {
      out.matches = true;
      out.complement_order = f;
      return out;
    }
  }
  return out;
}

/// The per-(group, prime) Theorem A verdict.
struct TheoremAReport {
  std::string group_name;
  i64 group_order = 0;
  i64 p = 0;
  i64 sylow_order = 0;
  bool sylow_cyclic = false;
  i64 k0_sigma = 0;
  i64 bound = 0;
  bool equality = false;
  bool cond_i = false;
  std::optional<i64> cond_i_witness;
  bool cond_ii = false;
  bool cond_iii = false;
  i64 fq_order = 0;
  bool fq_normal_p = false;
  std::optional<i64> fq_complement_order;
  bool consistent = false;
  bool question71_flag = false; // k0_sigma in S_p with non-cyclic Sylow
  std::optional<std::string> error;
  std::string error_kind; // "", "domain", "resource", "consistency", "internal"
};

inline TheoremAReport theorem_a_verdict(const std::string& name, const PermutationGroup& g,
                                        i64 p, i64 cap = kElementCap) {
  TheoremAReport r;
  r.group_name = name;
  r.group_order = g.order();
  r.p = p;
  try {
    if (g.order() % p != 0) throw DomainError("theorem_a_verdict: p must divide |G|");
    r.sylow_order = p_part(g.order(), p);
    TablePtr t = character_table(g, cap);
    BlockPartition part = block_partition(t, p);
    r.k0_sigma = k0_sigma(part).count;
    r.bound = ceil_bound(p);
    r.equality = (r.k0_sigma == r.bound);
    SubgroupHandle syl = sylow_subgroup(g, p, cap);
    r.sylow_cyclic = is_cyclic(syl.group, cap);
    r.cond_ii = r.sylow_cyclic;
    auto witness = condition_i_witness(p);
    r.cond_i = witness.has_value();
    r.cond_i_witness = witness;
    FrobeniusQuotient fq = frobenius_quotient(g, p, cap);
    r.fq_order = fq.order;
    r.cond_iii = false;
    if (witness) {
      ConditionIiiShape shape = condition_iii_shape(fq.quotient.group, p, *witness, cap);
      r.cond_iii = shape.matches;
      r.fq_normal_p = shape.normal_sylow_p;
      r.fq_complement_order = shape.complement_order;
      if (!r.fq_normal_p) {
        // Still report whether the quotient has a normal Sylow p-subgroup.
        SubgroupHandle qs = sylow_subgroup(fq.quotient.group, p, cap);
        r.fq_normal_p = is_normal_in(qs.group, fq.quotient.group);
      }
    } else {
      SubgroupHandle qs = sylow_subgroup(fq.quotient.group, p, cap);
      r.fq_normal_p = is_normal_in(qs.group, fq.quotient.group);
    }
    bool all_three = r.cond_i && r.cond_ii && r.cond_iii;
    r.consistent = (r.k0_sigma >= r.bound) && (r.equality == all_three);
    std::vector<i64> sp = sp_set(p);
    r.question71_flag =
        std::binary_search(sp.begin(), sp.end(), r.k0_sigma) && !r.sylow_cyclic;
  } catch (const ResourceError& e) {
    r.error = e.what();
    r.error_kind = "resource";
  } catch (const ConsistencyError& e) {
    r.error = e.what();
    r.error_kind = "consistency";
  } catch (const DomainError& e) {
    r.error = e.what();
    r.error_kind = "domain";
  } catch (const InternalError& e) {
    r.error = e.what();
    r.error_kind = "internal";
  }
  return r;
}

/// An explicit matrix action of a group on V = F_p^n.
struct ModuleAction {
  i64 p = 0;
  int dim = 0;
  std::vector<std::vector<std::vector<i64>>> matrices; // per generator, row-major n x n
};

inline constexpr i64 kModuleVectorCap = 1000000;

inline i64 module_vector_count(const ModuleAction& a) {
  i64 total = 1;
  for (int i = 0; i < a.dim; ++i) {
    total *= a.p;
    if (total > kModuleVectorCap)
      throw ResourceError("module size exceeds cap " + std::to_string(kModuleVectorCap));
  }
  return total;
}

inline void validate_module_action(const ModuleAction& a) {
  if (!is_prime(a.p)) throw DomainError("module action: p must be prime");
  if (a.dim < 1) throw DomainError("module action: dimension must be >= 1");
  for (const auto& m : a.matrices) {
    if (static_cast<int>(m.size()) != a.dim) throw DomainError("module action: matrix shape");
    fp::Mat mm(a.dim, fp::Vec(a.dim));
    for (int i = 0; i < a.dim; ++i) {
      if (static_cast<int>(m[i].size()) != a.dim)
        throw DomainError("module action: matrix shape");
      for (int j = 0; j < a.dim; ++j) mm[i][j] = ((m[i][j] % a.p) + a.p) % a.p;
    }
    if (static_cast<int>(fp::rref(mm, a.p).size()) != a.dim)
      throw DomainError("module action: generator matrix is singular mod p");
  }
}

/// n(G,V): the number of orbits of the matrix action on all of V, the zero
/// vector included.
struct OrbitCount {
  i64 total = 0;
  i64 nonzero = 0;
};

inline OrbitCount module_orbit_count(const ModuleAction& a) {
  validate_module_action(a);
  i64 size = module_vector_count(a);
  std::vector<bool> seen(size, false);
  OrbitCount out;
  std::vector<i64> pw(a.dim + 1, 1);
  for (int i = 0; i < a.dim; ++i) pw[i + 1] = pw[i] * a.p;
  std::vector<i64> stack;
  for (i64 v0 = 0; v0 < size; ++v0) {
    if (seen[v0]) continue;
    ++out.total;
    if (v0 != 0) ++out.nonzero;
    stack.assign(1, v0);
    seen[v0] = true;
    while (!stack.empty()) {
      i64 v = stack.back();
      stack.pop_back();
      std::vector<i64> coords(a.dim);
      for (int i = 0; i < a.dim; ++i) coords[i] = v / pw[i] % a.p;
      for (const auto& m : a.matrices) {
        i64 w = 0;
        for (int i = 0; i < a.dim; ++i) {
          i64 acc = 0;
          for (int j = 0; j < a.dim; ++j) acc += m[i][j] * coords[j];
          w += acc % a.p * pw[i];
        }
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return out;
}

/// Section 2 record: conjugation-orbit and class counts around an elementary
/// abelian normal p-subgroup V with p'-quotient, the Clifford-Gallagher
/// inequality, and (for minimal V of rank >= 2) the k(G) >= 2 sqrt(p-1) + 1
/// bound.
struct Section2Report {
  i64 p = 0;
  int rank = 0;
  bool minimal_normal = false;
  i64 k_g = 0;
  i64 k_quotient = 0;
  i64 n_gv = 0; // conjugation orbits on V, zero included
  bool clifford_gallagher_holds = false;
  bool rank2_bound_applicable = false;
  bool rank2_bound_holds = false;
};

inline Section2Report section2_checks(const PermutationGroup& g, const PermutationGroup& v,
                                      i64 p, i64 cap = kElementCap) {
  if (!is_prime(p)) throw DomainError("section2_checks: p must be prime");
  if (!is_normal_in(v, g)) throw DomainError("section2_checks: V is not normal in G");
  i64 vorder = v.order();
  if (p_part(vorder, p) != vorder || vorder == 1)
    throw DomainError("section2_checks: V is not a nontrivial p-group");
  std::vector<Permutation> velems = v.elements(cap);
  for (const auto& x : velems) {
    if (x.order() > p) throw DomainError("section2_checks: V is not elementary abelian");
  }
  for (const auto& x : v.generators())
    for (const auto& y : v.generators())
      if (x * y != y * x) throw DomainError("section2_checks: V is not abelian");
  if ((g.order() / vorder) % p == 0)
    throw DomainError("section2_checks: |G/V| must be coprime to p");

  Section2Report r;
  r.p = p;
  r.rank = valuation(vorder, p);
  ConjugacyClassSet classes(g, cap);
  r.k_g = classes.count();
  QuotientGroup q = quotient_group(g, v, cap);
  r.k_quotient = k_classcount(q.group, cap);
  std::set<int> orbit_classes;
  for (const auto& x : velems) orbit_classes.insert(classes.class_of(x));
  r.n_gv = static_cast<i64>(orbit_classes.size());
  r.clifford_gallagher_holds = (r.k_g >= r.k_quotient + r.n_gv - 1);
  // Minimality: the G-span of every nonzero vector is all of V.
  r.minimal_normal = true;
  for (const auto& x : velems) {
    if (x.is_identity()) continue;
    std::vector<Permutation> closure_gens;
    for (const auto& m : classes.members(classes.class_of(x))) closure_gens.push_back(m);
    std::sort(closure_gens.begin(), closure_gens.end());
    PermutationGroup span(g.degree(), reduce_generators(g.degree(), closure_gens));
    if (span.order() != vorder) {
      r.minimal_normal = false;
      break;
    }
  }
  r.rank2_bound_applicable = (r.rank >= 2 && r.minimal_normal);
  if (r.rank2_bound_applicable)
    // k >= 2 sqrt(p-1) + 1 as integers: (k-1)^2 >= 4(p-1).
    r.rank2_bound_holds = (r.k_g >= 1) && ((r.k_g - 1) * (r.k_g - 1) >= 4 * (p - 1));
  return r;
}

/// Prop 5.4 / Cor 5.5 comparison: k0_sigma(B_0(G)) vs k0_sigma(B_0(N_G(P))).
struct NormalizerEqualityReport {
  i64 p = 0;
  i64 k0_sigma_global = 0;
  i64 k0_sigma_local = 0;
  bool equal = false;
  i64 normalizer_order = 0;
};

inline NormalizerEqualityReport normalizer_equality_check(const PermutationGroup& g, i64 p,
                                                          i64 cap = kElementCap) {
  if (g.order() % p != 0) throw DomainError("normalizer_equality_check: p must divide |G|");
  NormalizerEqualityReport r;
  r.p = p;
  TablePtr t = character_table(g, cap);
  r.k0_sigma_global = k0_sigma(t, p).count;
  SubgroupHandle syl = sylow_subgroup(g, p, cap);
  SubgroupHandle norm = normalizer(g, syl.group, cap);
  r.normalizer_order = norm.order();
  TablePtr tn = character_table(norm.group, cap);
  r.k0_sigma_local = k0_sigma(tn, p).count;
  r.equal = (r.k0_sigma_global == r.k0_sigma_local);
  return r;
}

} // namespace blocklab
