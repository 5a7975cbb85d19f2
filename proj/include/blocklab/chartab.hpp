#pragma once

#include <memory>
#include <optional>
#include <sstream>

#include "blocklab/conjugacy.hpp"
#include "blocklab/cyclo.hpp"
#include "blocklab/fp.hpp"
#include "blocklab/subgroups.hpp"

namespace blocklab {

class CharacterTable;
using TablePtr = std::shared_ptr<const CharacterTable>;

/// A function constant on conjugacy classes, with exact cyclotomic values.
struct ClassFunction {
  TablePtr table;
  std::vector<Cyclotomic> values; // one per class, in the table's class order

  const Cyclotomic& at_class(int i) const { return values[i]; }
  Cyclotomic degree() const { return values[0]; }
};

inline constexpr int kClassCountCap = 300;

/// The ordinary character table of a permutation group. Irreducible rows are
/// exact and deterministically ordered by (degree, lexicographic value tuple).
///
/// Construction is Dixon-Schneider: simultaneous eigenvectors of the class
/// matrices over F_ell for the smallest prime ell = 1 (mod exponent) with
/// ell > 2 sqrt(|G|), lifted to cyclotomic values through the discrete
/// logarithm at a fixed primitive exponent-th root of unity mod ell.
class CharacterTable : public std::enable_shared_from_this<CharacterTable> {
public:
  static TablePtr build(const PermutationGroup& g, i64 cap = kElementCap) {
    auto t = std::shared_ptr<CharacterTable>(new CharacterTable(g, cap));
    return t;
  }

  /// Rebuild from cached rows; classes are recomputed (deterministic) and the
  /// rows are trusted after shape validation.
  static TablePtr from_cached(const PermutationGroup& g,
                              std::vector<std::vector<Cyclotomic>> rows, i64 cap = kElementCap) {
    auto t = std::shared_ptr<CharacterTable>(new CharacterTable(g, cap, std::move(rows)));
    return t;
  }

  const PermutationGroup& group() const { return group_; }
  const ConjugacyClassSet& classes() const { return classes_; }
  i64 exponent() const { return exponent_; }
  int class_count() const { return classes_.count(); }
  int character_count() const { return static_cast<int>(rows_.size()); }
  i64 order() const { return group_.order(); }

  const std::vector<Cyclotomic>& row_values(int i) const { return rows_[i]; }
  i64 degree(int i) const { return degrees_[i]; }
  const std::vector<i64>& degrees() const { return degrees_; }
  int trivial_row() const { return trivial_row_; }

  ClassFunction row(int i) const { return ClassFunction{shared_from_this(), rows_[i]}; }

  ClassFunction class_function(std::vector<Cyclotomic> values) const {
    if (static_cast<int>(values.size()) != class_count())
      throw DomainError("class function needs one value per class");
    return ClassFunction{shared_from_this(), std::move(values)};
  }

  /// Index of the row with the given values, if any.
  std::optional<int> find_row(const std::vector<Cyclotomic>& values) const {
    for (int i = 0; i < character_count(); ++i)
      if (rows_[i] == values) return i;
    return std::nullopt;
  }

private:
  PermutationGroup group_;
  ConjugacyClassSet classes_;
  i64 exponent_ = 1;
  std::vector<std::vector<Cyclotomic>> rows_;
  std::vector<i64> degrees_;
  int trivial_row_ = -1;

  CharacterTable(const PermutationGroup& g, i64 cap) : group_(g), classes_(g, cap) {
    if (classes_.count() > kClassCountCap)
      throw ResourceError("class count " + std::to_string(classes_.count()) +
                          " exceeds cap " + std::to_string(kClassCountCap));
    exponent_ = 1;
    for (int i = 0; i < classes_.count(); ++i)
      exponent_ = lcm_i64(exponent_, classes_[i].element_order);
    compute_dixon();
    finalize();
  }

  CharacterTable(const PermutationGroup& g, i64 cap, std::vector<std::vector<Cyclotomic>> rows)
      : group_(g), classes_(g, cap), rows_(std::move(rows)) {
    exponent_ = 1;
    for (int i = 0; i < classes_.count(); ++i)
      exponent_ = lcm_i64(exponent_, classes_[i].element_order);
    if (static_cast<int>(rows_.size()) != classes_.count())
      throw ParseError("cached table has wrong row count");
    for (const auto& r : rows_)
      if (static_cast<int>(r.size()) != classes_.count())
        throw ParseError("cached table has wrong column count");
    finalize();
  }

  void finalize() {
    degrees_.clear();
    for (const auto& r : rows_) {
      if (!r[0].is_integer()) throw InternalError("character degree is not an integer");
      Rational d = r[0].rational_value();
      degrees_.push_back(static_cast<i64>(mpz_get_si(d.get_num().get_mpz_t())));
    }
    trivial_row_ = -1;
    for (int i = 0; i < character_count(); ++i) {
      bool all_one = true;
      for (const auto& v : rows_[i])
        if (v != Cyclotomic(1)) {
          all_one = false;
          break;
        }
      if (all_one) {
        trivial_row_ = i;
        break;
      }
    }
    if (trivial_row_ < 0) throw InternalError("table has no trivial character");
  }

  static i64 choose_modulus(i64 exponent, i64 group_order) {
    for (i64 ell = exponent + 1;; ell += exponent)
      if (ell * ell > 4 * group_order && is_prime(ell)) return ell;
  }

  /// Least primitive e-th root of unity mod ell.
  static i64 primitive_root_mod(i64 e, i64 ell) {
    auto fac = factorize(e);
    for (i64 z = 1; z < ell; ++z) {
      if (pow_mod(z, e, ell) != 1) continue;
      bool primitive = true;
      for (auto [q, _] : fac)
        if (pow_mod(z, e / q, ell) == 1) {
          primitive = false;
          break;
        }
      if (primitive) return z;
    }
    throw InternalError("no primitive root of the requested order mod ell");
  }

  /// Class matrix for class i: A[j][m] = #{x in K_i : x^{-1} g_m in K_j}.
  fp::Mat class_matrix(int i) const {
    int k = classes_.count();
    fp::Mat a = fp::zeros(k, k);
    for (int m = 0; m < k; ++m) {
      const Permutation& gm = classes_[m].representative;
      for (const auto& x : classes_.members(i)) {
        int j = classes_.class_of(x.inverse() * gm);
        a[j][m] += 1;
      }
    }
    return a;
  }

  void compute_dixon() {
    const int k = classes_.count();
    const i64 gorder = group_.order();
    const i64 ell = choose_modulus(exponent_, gorder);
    const i64 z = primitive_root_mod(exponent_, ell);

    // Split F_ell^k into the simultaneous eigenspaces of the class matrices,
    // processing the matrices in class order.
    std::vector<fp::Mat> subspaces; // row bases, rref'd
    {
      fp::Mat full = fp::zeros(k, k);
      for (int i = 0; i < k; ++i) full[i][i] = 1;
      subspaces.push_back(std::move(full));
    }
    auto all_split = [&]() {
      for (const auto& s : subspaces)
        if (s.size() > 1) return false;
      return true;
    };
    for (int i = 1; i < k && !all_split(); ++i) {
      fp::Mat a;
      {
        fp::Mat raw = class_matrix(i);
        a = fp::zeros(k, k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) a[r][c] = raw[r][c] % ell;
      }
      std::vector<fp::Mat> next;
      for (auto& basis : subspaces) {
        std::size_t dim = basis.size();
        if (dim <= 1) {
          next.push_back(std::move(basis));
          continue;
        }
        // Pivot columns of the rref'd basis give coordinates directly.
        std::vector<int> pivots;
        {
          fp::Mat tmp = basis;
          pivots = fp::rref(tmp, ell);
          basis = std::move(tmp);
        }
        // Restriction R[s][t]: coordinates of A * b_t in the basis.
        fp::Mat r = fp::zeros(dim, dim);
        for (std::size_t t = 0; t < dim; ++t) {
          fp::Vec image = fp::mat_vec(a, basis[t], ell);
          for (std::size_t s = 0; s < dim; ++s) r[s][t] = image[pivots[s]];
        }
        fp::Vec roots = fp::poly_roots(fp::charpoly(r, ell), ell);
        if (roots.size() <= 1) {
          next.push_back(std::move(basis));
          continue;
        }
        std::size_t total = 0;
        for (i64 lambda : roots) {
          fp::Mat shifted = r;
          for (std::size_t s = 0; s < dim; ++s)
            shifted[s][s] = ((shifted[s][s] - lambda) % ell + ell) % ell;
          fp::Mat ker = fp::kernel(std::move(shifted), ell);
          fp::Mat sub;
          for (const auto& y : ker) {
            fp::Vec v(k, 0);
            for (std::size_t t = 0; t < dim; ++t) {
              if (y[t] == 0) continue;
              for (int c = 0; c < k; ++c) v[c] = (v[c] + mul_mod(y[t], basis[t][c], ell)) % ell;
            }
            sub.push_back(std::move(v));
          }
          fp::rref(sub, ell);
          total += sub.size();
          next.push_back(std::move(sub));
        }
        if (total != dim) throw InternalError("eigenspace split lost dimension");
      }
      subspaces = std::move(next);
    }
    if (!all_split()) throw InternalError("class matrices failed to separate the characters");

    // Normalized central-character vectors: omega[identity class] = 1.
    std::vector<fp::Vec> omegas;
    for (const auto& s : subspaces) {
      fp::Vec w = s[0];
      if (w[0] == 0) throw InternalError("central character vanishes on the identity class");
      i64 inv = inv_mod(w[0], ell);
      for (auto& x : w) x = mul_mod(x, inv, ell);
      omegas.push_back(std::move(w));
    }

    // Degrees: d^2 = |G| / sum_j omega_j omega_{j*} / |K_j| (mod ell), with
    // the unique integer square root below sqrt(|G|).
    std::vector<int> inv_class(k);
    for (int j = 0; j < k; ++j) inv_class[j] = classes_.inverse_class(j);
    rows_.assign(k, {});
    std::vector<std::pair<i64, int>> order_keys; // (degree, original index)
    std::vector<std::vector<Cyclotomic>> raw_rows(k);
    for (int s = 0; s < k; ++s) {
      const fp::Vec& w = omegas[s];
      i64 t = 0;
      for (int j = 0; j < k; ++j) {
        i64 term = mul_mod(w[j], w[inv_class[j]], ell);
        term = mul_mod(term, inv_mod(classes_[j].size % ell, ell), ell);
        t = (t + term) % ell;
      }
      if (t == 0) throw InternalError("degree formula degenerated");
      i64 dsq = mul_mod(gorder % ell, inv_mod(t, ell), ell);
      i64 deg = 0;
      for (i64 d = 1; d * d <= gorder; ++d)
        if (mul_mod(d % ell, d % ell, ell) == dsq) {
          deg = d;
          break;
        }
      if (deg == 0) throw InternalError("no integer degree matches the eigenvector");
      // Character values mod ell.
      fp::Vec f(k);
      for (int j = 0; j < k; ++j)
        f[j] = mul_mod(mul_mod(deg % ell, w[j], ell), inv_mod(classes_[j].size % ell, ell), ell);
      // Exact lift, class by class, inside Q(xi_m) for m the element order.
      std::vector<Cyclotomic> row(k);
      for (int j = 0; j < k; ++j) {
        i64 m = classes_[j].element_order;
        if (m == 1) {
          row[j] = Cyclotomic(Rational(deg));
          continue;
        }
        i64 zm_inv = inv_mod(pow_mod(z, exponent_ / m, ell), ell);
        i64 m_inv = inv_mod(m % ell, ell);
        std::vector<i64> fpow(m);
        for (i64 tt = 0; tt < m; ++tt) fpow[tt] = f[classes_.power_class(j, tt)];
        Cyclotomic value(0);
        i64 mult_sum = 0;
        for (i64 u = 0; u < m; ++u) {
          i64 zu = pow_mod(zm_inv, u, ell);
          i64 acc = 0, zp = 1;
          for (i64 tt = 0; tt < m; ++tt) {
            acc = (acc + mul_mod(fpow[tt], zp, ell)) % ell;
            zp = mul_mod(zp, zu, ell);
          }
          i64 mult = mul_mod(acc, m_inv, ell);
          if (mult > deg)
            throw InternalError("eigenvalue multiplicity exceeds the degree in the lift");
          mult_sum += mult;
          if (mult != 0) value += Cyclotomic(Rational(mult)) * root_of_unity(m, u);
        }
        if (mult_sum != deg) throw InternalError("eigenvalue multiplicities do not sum to degree");
        row[j] = std::move(value);
      }
      raw_rows[s] = std::move(row);
      order_keys.emplace_back(deg, s);
    }

    // Deterministic row order: by degree, then lexicographic value tuples.
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      if (order_keys[a].first != order_keys[b].first)
        return order_keys[a].first < order_keys[b].first;
      for (int j = 0; j < k; ++j) {
        int c = Cyclotomic::compare(raw_rows[a][j], raw_rows[b][j]);
        if (c != 0) return c < 0;
      }
      return false;
    });
    rows_.clear();
    for (int i : perm) rows_.push_back(std::move(raw_rows[i]));
  }
};

inline TablePtr character_table(const PermutationGroup& g, i64 cap = kElementCap) {
  return CharacterTable::build(g, cap);
}

/// <f, g> = |G|^-1 sum |K| f(K) conj(g(K)); exact.
inline Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (f.table != g.table) throw DomainError("inner_product: mismatched table contexts");
  const CharacterTable& t = *f.table;
  Cyclotomic acc(0);
  for (int j = 0; j < t.class_count(); ++j)
    acc += Cyclotomic(Rational(t.classes()[j].size)) * f.values[j] * g.values[j].conjugate();
  return acc * Cyclotomic(Rational(1) / Rational(t.order()));
}

/// Fusion: for each class of the subgroup table, the parent class containing it.
inline std::vector<int> class_fusion(const CharacterTable& sub, const CharacterTable& parent) {
  if (!is_subgroup_of(sub.group(), parent.group()))
    throw DomainError("class_fusion: not a subgroup");
  std::vector<int> fus(sub.class_count());
  for (int i = 0; i < sub.class_count(); ++i)
    fus[i] = parent.classes().class_of(sub.classes()[i].representative);
  return fus;
}

/// Induction from a subgroup table; degree multiplies by the index.
inline ClassFunction induce(const ClassFunction& f, const TablePtr& target) {
  const CharacterTable& h = *f.table;
  const CharacterTable& g = *target;
  std::vector<int> fus = class_fusion(h, g);
  std::vector<Cyclotomic> vals(g.class_count(), Cyclotomic(0));
  for (int i = 0; i < h.class_count(); ++i)
    vals[fus[i]] += Cyclotomic(Rational(h.classes()[i].size)) * f.values[i];
  for (int j = 0; j < g.class_count(); ++j) {
    // |C_G(g_j)| / |H| = |G| / (|K_j| |H|)
    Rational factor = Rational(g.order()) / (Rational(h.order()) * Rational(g.classes()[j].size));
    vals[j] = vals[j] * Cyclotomic(factor);
  }
  return g.class_function(std::move(vals));
}

/// Restriction to a subgroup table: value at h equals f(h).
inline ClassFunction restrict_to(const ClassFunction& f, const TablePtr& sub) {
  const CharacterTable& h = *sub;
  std::vector<int> fus = class_fusion(h, *f.table);
  std::vector<Cyclotomic> vals(h.class_count());
  for (int i = 0; i < h.class_count(); ++i) vals[i] = f.values[fus[i]];
  return h.class_function(std::move(vals));
}

/// Value-wise Galois image; for irreducible rows the image is again a row.
inline ClassFunction apply_galois_to_character(const ClassFunction& f, const GaloisMap& map) {
  if (map.modulus % f.table->exponent() != 0)
    throw DomainError("apply_galois_to_character: map modulus must be divisible by the exponent");
  std::vector<Cyclotomic> vals(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) vals[i] = map.apply(f.values[i]);
  return f.table->class_function(std::move(vals));
}

struct RationalityFlags {
  bool p_rational = false;
  bool almost_p_rational = false;
  bool sigma_fixed = false;
};

inline RationalityFlags rationality_flags(const ClassFunction& f, i64 p) {
  RationalityFlags out;
  out.p_rational = true;
  out.almost_p_rational = true;
  for (const auto& v : f.values) {
    i64 c = v.conductor();
    i64 pp = p_part(c, p);
    if (pp > 1) out.p_rational = false;
    if (pp > p) out.almost_p_rational = false;
  }
  GaloisMap sigma = sigma_exponent(p, f.table->exponent());
  out.sigma_fixed = true;
  for (const auto& v : f.values) {
    if (sigma.apply(v) != v) {
      out.sigma_fixed = false;
      break;
    }
  }
  return out;
}

/// Inflation of a class function on G/N along the coset projection.
inline ClassFunction inflate(const ClassFunction& f, const QuotientGroup& q,
                             const std::vector<Permutation>& kernel_elements,
                             const TablePtr& target) {
  const CharacterTable& g = *target;
  const CharacterTable& qt = *f.table;
  std::vector<Cyclotomic> vals(g.class_count());
  for (int j = 0; j < g.class_count(); ++j) {
    Permutation image = q.project(g.classes()[j].representative, kernel_elements);
    vals[j] = f.values[qt.classes().class_of(image)];
  }
  return g.class_function(std::move(vals));
}

/// Both orthogonality relations, exactly. Throws ConsistencyError on failure.
inline void check_orthogonality(const CharacterTable& t) {
  int k = t.class_count();
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Cyclotomic ip = inner_product(t.row(a), t.row(b));
      if (ip != Cyclotomic(a == b ? 1 : 0))
        throw ConsistencyError("row orthogonality failed");
    }
  for (int x = 0; x < k; ++x)
    for (int y = x; y < k; ++y) {
      Cyclotomic acc(0);
      for (int s = 0; s < k; ++s)
        acc += t.row_values(s)[x] * t.row_values(s)[y].conjugate();
      Cyclotomic expect(0);
      if (x == y) expect = Cyclotomic(Rational(t.order()) / Rational(t.classes()[x].size));
      if (acc != expect) throw ConsistencyError("column orthogonality failed");
    }
}

/// Plain-text rendering: class header (representative, size, element order),
/// one row per irreducible in canonical order.
inline std::string format_table(const CharacterTable& t) {
  std::ostringstream os;
  os << "group order " << t.order() << ", " << t.class_count() << " classes, exponent "
     << t.exponent() << "\n";
  for (int j = 0; j < t.class_count(); ++j)
    os << "class " << j << ": rep " << t.classes()[j].representative.cycle_string() << " size "
       << t.classes()[j].size << " order " << t.classes()[j].element_order << "\n";
  for (int i = 0; i < t.character_count(); ++i) {
    os << "chi" << i << " (deg " << t.degree(i) << "):";
    for (int j = 0; j < t.class_count(); ++j) os << ' ' << t.row_values(i)[j].str();
    os << "\n";
  }
  return os.str();
}

} // namespace blocklab
