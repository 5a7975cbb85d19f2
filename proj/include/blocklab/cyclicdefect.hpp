#pragma once

#include <set>

#include "blocklab/blocks.hpp"

namespace blocklab {

/// Context for the cyclic-Sylow machinery: P = <c> a cyclic Sylow p-subgroup,
/// N = N_G(P), C = C_G(P) = C_G(c), and the exponent subgroup
/// T = {t mod |P| : c^g = c^t for g in N} of (Z/|P|)^x.
struct CyclicSylowContext {
  TablePtr table;
  i64 p = 0;
  i64 sylow_order = 0;      // |P| = p^m
  Permutation generator;    // deterministic generator c of P
  SubgroupHandle sylow;
  SubgroupHandle normalizer_sub;
  SubgroupHandle centralizer_sub;
  std::vector<i64> twist_exponents;      // T, sorted
  std::map<i64, i64> dlog;               // element of P (by power of c) -> exponent
  std::vector<int> p_element_classes;    // transversal S: class indices of p-element classes
  std::vector<i64> in_p_exponent;        // exponent s with c^s in that class, per transversal slot
  std::vector<int> section_of;           // class index -> transversal slot
};

inline CyclicSylowContext cyclic_sylow_context(const TablePtr& table, i64 p,
                                               i64 cap = kElementCap) {
  const CharacterTable& t = *table;
  const PermutationGroup& g = t.group();
  CyclicSylowContext ctx;
  ctx.table = table;
  ctx.p = p;
  ctx.sylow = sylow_subgroup(g, p, cap);
  ctx.sylow_order = ctx.sylow.order();
  if (ctx.sylow_order == 1) throw DomainError("cyclic-defect machinery needs p | |G|");
  if (!is_cyclic(ctx.sylow.group, cap))
    throw DomainError("cyclic-defect machinery needs a cyclic Sylow p-subgroup");
  // Deterministic generator: lexicographically least element of order |P|.
  std::vector<Permutation> pelems = ctx.sylow.group.elements(cap);
  std::sort(pelems.begin(), pelems.end());
  for (const auto& x : pelems)
    if (x.order() == ctx.sylow_order) {
      ctx.generator = x;
      break;
    }
  ctx.normalizer_sub = normalizer(g, ctx.sylow.group, cap);
  ctx.centralizer_sub = centralizer(g, ctx.generator, cap);
  // Discrete logs in P.
  std::map<std::vector<int>, i64> elem_to_exp;
  {
    Permutation cur = Permutation::identity(g.degree());
    for (i64 e = 0; e < ctx.sylow_order; ++e) {
      elem_to_exp[cur.images()] = e;
      cur = cur * ctx.generator;
    }
  }
  // Twist exponents from the normalizer action on c.
  std::set<i64> twists;
  for (const auto& x : ctx.normalizer_sub.group.elements(cap)) {
    auto it = elem_to_exp.find(ctx.generator.conjugate_by(x).images());
    if (it == elem_to_exp.end()) throw InternalError("normalizer element broke P");
    twists.insert(it->second);
  }
  ctx.twist_exponents.assign(twists.begin(), twists.end());
  if (static_cast<i64>(ctx.twist_exponents.size()) !=
      ctx.normalizer_sub.order() / ctx.centralizer_sub.order())
    throw InternalError("twist count disagrees with |N:C|");
  // p-sections: transversal of the p-element classes, in class order, with a
  // representative chosen inside P.
  const ConjugacyClassSet& cls = t.classes();
  std::map<int, i64> class_to_exp;
  {
    Permutation cur = Permutation::identity(g.degree());
    for (i64 e = 0; e < ctx.sylow_order; ++e) {
      int ci = cls.class_of(cur);
      if (!class_to_exp.count(ci)) class_to_exp[ci] = e;
      cur = cur * ctx.generator;
    }
  }
  ctx.section_of.assign(cls.count(), -1);
  for (int ci = 0; ci < cls.count(); ++ci) {
    i64 o = cls[ci].element_order;
    if (o != p_part(o, p)) continue; // not a p-element class
    auto it = class_to_exp.find(ci);
    if (it == class_to_exp.end())
      throw InternalError("a p-element class misses the cyclic Sylow subgroup");
    ctx.p_element_classes.push_back(ci);
    ctx.in_p_exponent.push_back(it->second);
  }
  for (int ci = 0; ci < cls.count(); ++ci) {
    Permutation p_partx = p_decomposition(cls[ci].representative, p).first;
    int pclass = cls.class_of(p_partx);
    auto slot = std::find(ctx.p_element_classes.begin(), ctx.p_element_classes.end(), pclass);
    if (slot == ctx.p_element_classes.end())
      throw InternalError("p-part class is not in the transversal");
    ctx.section_of[ci] = static_cast<int>(slot - ctx.p_element_classes.begin());
  }
  return ctx;
}

/// A nontrivial linear character of P = <c>, lambda(c^s) = xi_{|P|}^(j s).
struct LambdaLabel {
  i64 exponent = 1; // j, 1 <= j < |P|
};

/// eta_lambda = sum of the N_G(P)-orbit of lambda; as a function on P,
/// eta(c^s) = sum over t in T of xi^(j t s). Constant on N-orbits, hence on
/// G-classes of p-elements (Burnside fusion for the abelian P).
struct EtaLambda {
  i64 sylow_order = 0;
  i64 lambda_exponent = 0;
  std::vector<i64> twists;

  Cyclotomic value_at_exponent(i64 s) const {
    Cyclotomic acc(0);
    for (i64 t : twists) acc += root_of_unity(sylow_order, lambda_exponent * (t % sylow_order) % sylow_order * (s % sylow_order) % sylow_order);
    return acc;
  }
};

inline EtaLambda eta_lambda(const CyclicSylowContext& ctx, const LambdaLabel& lambda) {
  if (lambda.exponent % ctx.sylow_order == 0)
    throw DomainError("eta_lambda: lambda must be a nontrivial character of P");
  EtaLambda eta;
  eta.sylow_order = ctx.sylow_order;
  eta.lambda_exponent = ((lambda.exponent % ctx.sylow_order) + ctx.sylow_order) % ctx.sylow_order;
  eta.twists = ctx.twist_exponents;
  return eta;
}

/// Orbits of the N_G(P)-action on Irr(P) - {1}: lambda_j ~ lambda_{jt}.
inline std::vector<std::vector<i64>> lambda_orbits(const CyclicSylowContext& ctx) {
  std::vector<std::vector<i64>> orbits;
  std::vector<bool> seen(ctx.sylow_order, false);
  for (i64 j = 1; j < ctx.sylow_order; ++j) {
    if (seen[j]) continue;
    std::vector<i64> orbit;
    for (i64 t : ctx.twist_exponents) {
      i64 m = j * (t % ctx.sylow_order) % ctx.sylow_order;
      if (!seen[m]) {
        seen[m] = true;
        orbit.push_back(m);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

/// chi * eta_lambda by the section formula: the value on a class inside the
/// p-section S(x) is eta_lambda(x) * chi(that class).
inline ClassFunction star_with_eta(const CyclicSylowContext& ctx, const ClassFunction& chi,
                                   const LambdaLabel& lambda) {
  if (chi.table != ctx.table) throw DomainError("star_with_eta: mismatched table");
  EtaLambda eta = eta_lambda(ctx, lambda);
  const CharacterTable& t = *ctx.table;
  std::vector<Cyclotomic> vals(t.class_count());
  for (int ci = 0; ci < t.class_count(); ++ci) {
    int slot = ctx.section_of[ci];
    vals[ci] = eta.value_at_exponent(ctx.in_p_exponent[slot]) * chi.values[ci];
  }
  return t.class_function(std::move(vals));
}

/// The exceptional / non-exceptional split of the principal block:
/// nex = the p-rational members, ex = the rest.
///
/// A lambda-orbit is degenerate when it is a full level set (the orbit of a
/// label of order p^i has size phi(p^i)); its orbit sum over T is rational,
/// so the attached character is p-rational and does not land in ex. For odd
/// p this happens only at level 1 and only when |N:C| = p-1 (always at level
/// 1 for p = 2). The parametrization then pairs ex with the non-degenerate
/// orbits.
struct ExNexSplit {
  std::vector<int> nex;
  std::vector<int> ex;
  std::vector<std::vector<i64>> orbits;  // N_G(P)-orbits on Irr(P) - {1}
  std::vector<int> degenerate_orbits;    // indices into orbits
};

inline ExNexSplit split_ex_nex(const CyclicSylowContext& ctx, const BlockPartition& part) {
  if (part.table != ctx.table || part.p != ctx.p)
    throw DomainError("split_ex_nex: mismatched partition");
  ExNexSplit out;
  const CharacterTable& t = *ctx.table;
  for (int m : part.principal().members) {
    bool rational = true;
    for (const auto& v : t.row_values(m))
      if (v.conductor() % ctx.p == 0) {
        rational = false;
        break;
      }
    (rational ? out.nex : out.ex).push_back(m);
  }
  out.orbits = lambda_orbits(ctx);
  for (std::size_t i = 0; i < out.orbits.size(); ++i) {
    i64 j = out.orbits[i][0];
    i64 level = ctx.sylow_order / gcd_i64(j, ctx.sylow_order); // order of lambda_j
    if (static_cast<i64>(out.orbits[i].size()) == euler_phi(level))
      out.degenerate_orbits.push_back(static_cast<int>(i));
  }
  if (out.orbits.size() != out.ex.size() + out.degenerate_orbits.size())
    throw ConsistencyError("lambda-orbit count differs from the exceptional count");
  return out;
}

/// The unique non-p-rational constituent of chi * eta_lambda (chi a
/// p-rational member of B_0). Nonzero multiplicity may be negative; the
/// integrality of every multiplicity is asserted.
inline int exceptional_for_label(const CyclicSylowContext& ctx, const BlockPartition& part,
                                 const ClassFunction& chi_nex, const LambdaLabel& lambda) {
  const CharacterTable& t = *ctx.table;
  ClassFunction star = star_with_eta(ctx, chi_nex, lambda);
  int found = -1;
  for (int i = 0; i < t.character_count(); ++i) {
    Cyclotomic m = inner_product(star, t.row(i));
    if (!m.is_integer())
      throw ConsistencyError("chi * eta_lambda is not a generalized character");
    if (m.is_zero()) continue;
    bool rational = true;
    for (const auto& v : t.row_values(i))
      if (v.conductor() % ctx.p == 0) {
        rational = false;
        break;
      }
    if (rational) continue;
    if (found >= 0)
      throw ConsistencyError("chi * eta_lambda has several non-p-rational constituents");
    found = i;
  }
  if (found < 0) throw ConsistencyError("chi * eta_lambda has no non-p-rational constituent");
  if (part.block_of[found] != 0)
    throw ConsistencyError("exceptional constituent escaped the principal block");
  return found;
}

/// Local-global comparison record (Lemma 5.2 consequence and Cor. 5.5 data).
struct LocalGlobalReport {
  i64 p = 0;
  i64 sylow_order = 0;
  i64 k_b0_global = 0;
  i64 k_b0_local = 0;
  i64 k0_sigma_global = 0;
  i64 k0_sigma_local = 0;
  i64 ex_global = 0, nex_global = 0;
  i64 ex_local = 0, nex_local = 0;
  bool all_almost_p_rational_global = false;
  bool sylow_is_p = false; // |P| = p
  bool sizes_agree = false;
  bool almost_rational_iff_order_p = false;
};

inline LocalGlobalReport local_global_report(const TablePtr& table, i64 p,
                                             i64 cap = kElementCap) {
  CyclicSylowContext ctx = cyclic_sylow_context(table, p, cap);
  BlockPartition part = block_partition(table, p);
  ExNexSplit split = split_ex_nex(ctx, part);

  TablePtr local_table = character_table(ctx.normalizer_sub.group, cap);
  BlockPartition local_part = block_partition(local_table, p);
  CyclicSylowContext local_ctx = cyclic_sylow_context(local_table, p, cap);
  ExNexSplit local_split = split_ex_nex(local_ctx, local_part);

  LocalGlobalReport r;
  r.p = p;
  r.sylow_order = ctx.sylow_order;
  r.k_b0_global = static_cast<i64>(part.principal().members.size());
  r.k_b0_local = static_cast<i64>(local_part.principal().members.size());
  r.k0_sigma_global = k0_sigma(part).count;
  r.k0_sigma_local = k0_sigma(local_part).count;
  r.ex_global = static_cast<i64>(split.ex.size());
  r.nex_global = static_cast<i64>(split.nex.size());
  r.ex_local = static_cast<i64>(local_split.ex.size());
  r.nex_local = static_cast<i64>(local_split.nex.size());
  const CharacterTable& t = *table;
  r.all_almost_p_rational_global = true;
  for (int m : part.principal().members) {
    for (const auto& v : t.row_values(m))
      if (p_part(v.conductor(), p) > p) r.all_almost_p_rational_global = false;
  }
  r.sylow_is_p = (ctx.sylow_order == p);
  r.sizes_agree = (r.k_b0_global == r.k_b0_local) && (r.k0_sigma_global == r.k0_sigma_local);
  r.almost_rational_iff_order_p = (r.all_almost_p_rational_global == r.sylow_is_p);
  return r;
}

inline std::string format_local_global(const LocalGlobalReport& r) {
  std::ostringstream os;
  os << "p=" << r.p << " |P|=" << r.sylow_order << "\n"
     << "k(B0(G)) = " << r.k_b0_global << " vs k(B0(N)) = " << r.k_b0_local << "\n"
     << "k0_sigma(B0(G)) = " << r.k0_sigma_global << " vs k0_sigma(B0(N)) = " << r.k0_sigma_local
     << "\n"
     << "ex/nex global = " << r.ex_global << "/" << r.nex_global
     << ", local = " << r.ex_local << "/" << r.nex_local << "\n"
     << "all B0(G) almost p-rational: " << (r.all_almost_p_rational_global ? "yes" : "no")
     << ", |P| = p: " << (r.sylow_is_p ? "yes" : "no") << "\n"
     << "verdict: " << ((r.sizes_agree && r.almost_rational_iff_order_p) ? "consistent"
                                                                         : "INCONSISTENT")
     << "\n";
  return os.str();
}

} // namespace blocklab
