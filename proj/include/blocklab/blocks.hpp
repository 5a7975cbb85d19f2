#pragma once

#include <map>

#include "blocklab/chartab.hpp"

namespace blocklab {

struct Block {
  std::vector<int> members;     // character row indices
  int defect = 0;
  std::vector<int> height_zero; // members attaining the minimal degree p-part
  bool is_principal = false;
};

/// The p-block partition of Irr(G). Block 0 is the principal block.
struct BlockPartition {
  i64 p = 0;
  TablePtr table;
  std::vector<Block> blocks;
  std::vector<int> block_of; // per character row

  const Block& principal() const { return blocks[0]; }
};

/// Membership test for the principal block by the p-regular sum criterion:
/// chi lies in B_0 iff sum over p-regular classes of |K| chi(x_K) is nonzero.
inline bool principal_membership_sum(const ClassFunction& chi, i64 p) {
  if (!is_prime(p)) throw DomainError("principal_membership_sum: p must be prime");
  const CharacterTable& t = *chi.table;
  Cyclotomic acc(0);
  for (int j = 0; j < t.class_count(); ++j) {
    if (t.classes()[j].element_order % p == 0) continue;
    acc += Cyclotomic(Rational(t.classes()[j].size)) * chi.values[j];
  }
  return !acc.is_zero();
}

/// Central characters reduced into F_{p^d}: chi and psi are linked iff their
/// omega vectors agree after the reduction xi_E |-> zeta^alpha with zeta the
/// deterministic primitive E'-th root in F_{p^d} (E' the p'-part of the
/// exponent, d the order of p mod E', alpha the inverse of the p-part of E
/// mod E'); p-power roots of unity collapse to 1. Blocks are linkage classes.
inline BlockPartition block_partition(const TablePtr& table, i64 p) {
  if (!is_prime(p)) throw DomainError("block_partition: p must be prime");
  const CharacterTable& t = *table;
  int k = t.class_count();
  BlockPartition part;
  part.p = p;
  part.table = table;
  part.block_of.assign(k, -1);

  if (t.order() % p != 0) {
    // Degenerate input: every block a singleton, B_0 = {1_G}.
    std::vector<int> order_rows;
    order_rows.push_back(t.trivial_row());
    for (int i = 0; i < k; ++i)
      if (i != t.trivial_row()) order_rows.push_back(i);
    for (int i : order_rows) {
      Block b;
      b.members = {i};
      b.defect = 0;
      b.height_zero = {i};
      b.is_principal = (i == t.trivial_row());
      part.block_of[i] = static_cast<int>(part.blocks.size());
      part.blocks.push_back(std::move(b));
    }
    return part;
  }

  i64 exponent = t.exponent();
  i64 pa = p_part(exponent, p);
  i64 eprime = exponent / pa;
  int d = static_cast<int>(mult_order(p, eprime));
  GFq field(p, d);
  GFq::Elem zeta = field.primitive_root_of_order(eprime);
  i64 alpha = (eprime == 1) ? 0 : inv_mod(pa % eprime, eprime);
  std::vector<GFq::Elem> zeta_pow(eprime, field.one());
  for (i64 i = 1; i < eprime; ++i) zeta_pow[i] = field.mul(zeta_pow[i - 1], zeta);

  // Reduce omega_chi(K) = |K| chi(x_K) / chi(1) (an algebraic integer) by
  // mapping the integral power-basis coordinates at conductor E.
  auto reduce_value = [&](const Cyclotomic& omega) -> GFq::Elem {
    Cyclotomic lifted = omega.lifted_to(exponent);
    if (!lifted.has_integral_coefficients())
      throw InternalError("central character is not an algebraic integer");
    GFq::Elem acc = field.zero();
    const auto& coeffs = lifted.coefficients();
    for (std::size_t kk = 0; kk < coeffs.size(); ++kk) {
      if (coeffs[kk] == 0) continue;
      i64 c = static_cast<i64>(mpz_fdiv_ui(coeffs[kk].get_num().get_mpz_t(),
                                           static_cast<unsigned long>(p)));
      if (c == 0) continue;
      i64 e = (eprime == 1) ? 0 : (alpha % eprime) * (static_cast<i64>(kk) % eprime) % eprime;
      acc = field.add(acc, field.scalar_mul(c, zeta_pow[e]));
    }
    return acc;
  };

  std::map<std::vector<GFq::Elem>, std::vector<int>> linkage;
  for (int i = 0; i < t.character_count(); ++i) {
    std::vector<GFq::Elem> key(k);
    Rational inv_deg = Rational(1) / Rational(t.degree(i));
    for (int j = 0; j < k; ++j) {
      Cyclotomic omega =
          Cyclotomic(Rational(t.classes()[j].size) * inv_deg) * t.row_values(i)[j];
      key[j] = reduce_value(omega);
    }
    linkage[std::move(key)].push_back(i);
  }

  // Deterministic block order: principal first, then by least member index.
  std::vector<std::vector<int>> groups;
  for (auto& [key, members] : linkage) groups.push_back(members);
  std::sort(groups.begin(), groups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  int principal_at = -1;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (int m : groups[i])
      if (m == t.trivial_row()) principal_at = static_cast<int>(i);
  if (principal_at < 0) throw InternalError("no block contains the trivial character");
  std::swap(groups[0], groups[principal_at]);

  int a = valuation(t.order(), p);
  for (auto& members : groups) {
    Block b;
    b.members = members;
    int minval = a;
    for (int m : members) minval = std::min(minval, valuation(t.degree(m), p));
    b.defect = a - minval;
    for (int m : members)
      if (valuation(t.degree(m), p) == minval) b.height_zero.push_back(m);
    b.is_principal = false;
    for (int m : members)
      if (m == t.trivial_row()) b.is_principal = true;
    for (int m : members) part.block_of[m] = static_cast<int>(part.blocks.size());
    part.blocks.push_back(std::move(b));
  }
  return part;
}

/// k_{0,sigma}(B_0(G)): sigma-fixed p'-degree irreducible characters in the
/// principal block. For p not dividing |G| this degenerates to 1 (the trivial
/// character); callers that care receive the note via the flag.
struct K0SigmaResult {
  i64 count = 0;
  bool degenerate = false; // p does not divide |G|
};

inline K0SigmaResult k0_sigma(const BlockPartition& part) {
  const CharacterTable& t = *part.table;
  K0SigmaResult out;
  GaloisMap sigma = sigma_exponent(part.p, t.exponent());
  for (int m : part.principal().members) {
    if (t.degree(m) % part.p == 0) continue;
    bool fixed = true;
    for (const auto& v : t.row_values(m))
      if (sigma.apply(v) != v) {
        fixed = false;
        break;
      }
    if (fixed) ++out.count;
  }
  return out;
}

inline K0SigmaResult k0_sigma(const TablePtr& table, i64 p) {
  if (table->order() % p != 0) {
    K0SigmaResult out;
    out.count = 1;
    out.degenerate = true;
    return out;
  }
  return k0_sigma(block_partition(table, p));
}

/// Weak block orthogonality: for x p-regular and y p-singular,
/// sum over chi in B of chi(x) conj(chi(y)) vanishes exactly.
inline void check_block_orthogonality(const BlockPartition& part) {
  const CharacterTable& t = *part.table;
  for (const Block& b : part.blocks) {
    for (int x = 0; x < t.class_count(); ++x) {
      if (t.classes()[x].element_order % part.p == 0) continue;
      for (int y = 0; y < t.class_count(); ++y) {
        if (t.classes()[y].element_order % part.p != 0) continue;
        Cyclotomic acc(0);
        for (int m : b.members)
          acc += t.row_values(m)[x] * t.row_values(m)[y].conjugate();
        if (!acc.is_zero()) throw ConsistencyError("block orthogonality failed");
      }
    }
  }
}

/// Per-block report rendering: member degrees, defect, principal flag, and
/// the sigma-orbit structure of the members.
inline std::string format_blocks(const BlockPartition& part) {
  const CharacterTable& t = *part.table;
  GaloisMap sigma = sigma_exponent(part.p, t.exponent());
  std::ostringstream os;
  os << "p = " << part.p << ": " << part.blocks.size() << " block(s)\n";
  for (std::size_t i = 0; i < part.blocks.size(); ++i) {
    const Block& b = part.blocks[i];
    os << "block " << i << (b.is_principal ? " (principal)" : "") << ": defect " << b.defect
       << ", degrees";
    for (int m : b.members) os << ' ' << t.degree(m);
    os << ", height zero";
    for (int m : b.height_zero) os << ' ' << t.degree(m);
    // sigma-orbits inside the block.
    std::vector<bool> seen(t.character_count(), false);
    os << ", sigma orbits";
    for (int m : b.members) {
      if (seen[m]) continue;
      std::vector<int> orbit{m};
      seen[m] = true;
      int cur = m;
      for (;;) {
        ClassFunction img = apply_galois_to_character(t.row(cur), sigma);
        auto nxt = t.find_row(img.values);
        if (!nxt) throw InternalError("sigma image left the table");
        if (seen[*nxt]) break;
        seen[*nxt] = true;
        orbit.push_back(*nxt);
        cur = *nxt;
      }
      os << " {";
      for (std::size_t j = 0; j < orbit.size(); ++j) os << (j ? " " : "") << "chi" << orbit[j];
      os << "}";
    }
    os << "\n";
  }
  return os.str();
}

} // namespace blocklab
