#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <complex>
#include <random>

#include "blocklab/chartab.hpp"
#include "blocklab/constructions.hpp"

using namespace blocklab;

namespace {

PermutationGroup quaternion8() {
  return PermutationGroup(8, {Permutation({1, 4, 3, 6, 5, 0, 7, 2}),
                              Permutation({2, 7, 4, 1, 6, 3, 0, 5})});
}

PermutationGroup semidihedral16() {
  std::vector<int> rot(8), tw(8);
  for (int i = 0; i < 8; ++i) {
    rot[i] = (i + 1) % 8;
    tw[i] = 3 * i % 8;
  }
  return PermutationGroup(8, {Permutation(rot), Permutation(tw)});
}

// Independent floating-point class-matrix oracle: numerically diagonalize a
// random real combination of the class matrices and recover the character
// values from the eigenvectors. Entirely separate from the exact F_ell path.
std::vector<std::vector<std::complex<double>>> float_table_oracle(const PermutationGroup& g) {
  ConjugacyClassSet cls(g);
  int k = cls.count();
  std::vector<Eigen::MatrixXd> mats;
  for (int i = 0; i < k; ++i) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    for (int m = 0; m < k; ++m) {
      const Permutation& gm = cls[m].representative;
      for (const auto& x : cls.members(i)) a(cls.class_of(x.inverse() * gm), m) += 1.0;
    }
    mats.push_back(std::move(a));
  }
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> wd(0.25, 1.0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) m += wd(rng) * mats[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    // Demand well-separated eigenvalues so the eigenvectors are stable.
    bool separated = true;
    for (int a = 0; a < k && separated; ++a)
      for (int b = a + 1; b < k; ++b)
        if (std::abs(es.eigenvalues()(a) - es.eigenvalues()(b)) < 1e-6) {
          separated = false;
          break;
        }
    if (!separated) continue;
    std::vector<std::vector<std::complex<double>>> rows;
    for (int s = 0; s < k; ++s) {
      Eigen::VectorXcd v = es.eigenvectors().col(s);
      std::vector<std::complex<double>> omega(k);
      for (int j = 0; j < k; ++j) omega[j] = v(j) / v(0);
      std::complex<double> t = 0.0;
      for (int j = 0; j < k; ++j)
        t += omega[j] * std::conj(omega[j]) / static_cast<double>(cls[j].size);
      double dsq = static_cast<double>(g.order()) / t.real();
      double deg = std::round(std::sqrt(dsq));
      std::vector<std::complex<double>> chi(k);
      for (int j = 0; j < k; ++j) chi[j] = deg * omega[j] / static_cast<double>(cls[j].size);
      rows.push_back(std::move(chi));
    }
    return rows;
  }
  throw std::runtime_error("float oracle: eigenvalues would not separate");
}

// Matches every exact row against a distinct oracle row within tolerance.
void check_against_float_oracle(const CharacterTable& t, double tol = 1e-6) {
  auto oracle = float_table_oracle(t.group());
  int k = t.class_count();
  REQUIRE(static_cast<int>(oracle.size()) == k);
  std::vector<bool> used(k, false);
  for (int i = 0; i < k; ++i) {
    int match = -1;
    for (int s = 0; s < k && match < 0; ++s) {
      if (used[s]) continue;
      double worst = 0.0;
      for (int j = 0; j < k; ++j)
        worst = std::max(worst, std::abs(t.row_values(i)[j].approx() - oracle[s][j]));
      if (worst < tol) match = s;
    }
    REQUIRE(match >= 0);
    used[match] = true;
  }
}

std::multiset<i64> degree_multiset(const CharacterTable& t) {
  return {t.degrees().begin(), t.degrees().end()};
}

} // namespace

TEST_CASE("degrees of standard tables") {
  CHECK(degree_multiset(*character_table(alternating_group(5))) ==
        std::multiset<i64>{1, 3, 3, 4, 5});
  CHECK(degree_multiset(*character_table(symmetric_group(3))) == std::multiset<i64>{1, 1, 2});
  CHECK(degree_multiset(*character_table(symmetric_group(4))) == std::multiset<i64>{1, 1, 2, 3, 3});
  CHECK(degree_multiset(*character_table(psl2(7))) == std::multiset<i64>{1, 3, 3, 6, 7, 8});
  CHECK(degree_multiset(*character_table(quaternion8())) == std::multiset<i64>{1, 1, 1, 1, 2});
  CHECK(degree_multiset(*character_table(semidihedral16())) ==
        std::multiset<i64>{1, 1, 1, 1, 2, 2, 2});
}

TEST_CASE("cyclic group tables are the DFT matrix") {
  for (i64 n : {1, 2, 5, 6, 12}) {
    TablePtr t = character_table(cyclic_group(n));
    REQUIRE(t->class_count() == n);
    // Every row is j |-> xi_n^(jk) for some j; check as a set.
    std::set<int> seen;
    for (int i = 0; i < n; ++i) {
      // Identify j from the value at the generator class; rows are exact.
      bool found = false;
      for (int j = 0; j < n && !found; ++j) {
        bool rowmatch = true;
        for (int kidx = 0; kidx < n && rowmatch; ++kidx) {
          i64 ord = t->classes()[kidx].element_order;
          (void)ord;
          // class kidx has representative = generator^a for some a; recover a
          // by matching against the class representative order... simpler:
          // validate chi_j(rep) = xi_n^(j * dlog(rep)) using rep itself.
          const Permutation& rep = t->classes()[kidx].representative;
          i64 a = rep(0); // generator^a sends 0 to a in the n-cycle
          if (t->row_values(i)[kidx] != root_of_unity(n, j * a)) rowmatch = false;
        }
        if (rowmatch) {
          CHECK(!seen.count(j));
          seen.insert(j);
          found = true;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("orthogonality holds exactly") {
  for (const PermutationGroup& g : {symmetric_group(4), alternating_group(5), psl2(7),
                                    quaternion8(), semidihedral16(), frobenius_group(13, 3),
                                    semidirect_cyclic(25, 4, 7), dihedral_group(8)}) {
    TablePtr t = character_table(g);
    CHECK_NOTHROW(check_orthogonality(*t));
    i64 sum = 0;
    for (i64 d : t->degrees()) {
      CHECK(g.order() % d == 0);
      sum += d * d;
    }
    CHECK(sum == g.order());
  }
}

TEST_CASE("tables match the floating-point class-matrix oracle") {
  for (const PermutationGroup& g :
       {symmetric_group(3), symmetric_group(4), alternating_group(4), alternating_group(5),
        dihedral_group(4), quaternion8(), semidihedral16(), frobenius_group(13, 3), psl2(7),
        cyclic_group(12)}) {
    TablePtr t = character_table(g);
    check_against_float_oracle(*t);
  }
}

TEST_CASE("deterministic construction") {
  TablePtr a = character_table(alternating_group(5));
  TablePtr b = character_table(alternating_group(5));
  REQUIRE(a->character_count() == b->character_count());
  for (int i = 0; i < a->character_count(); ++i)
    CHECK(a->row_values(i) == b->row_values(i));
}

TEST_CASE("inner products") {
  TablePtr t = character_table(alternating_group(5));
  for (int i = 0; i < t->character_count(); ++i)
    for (int j = 0; j < t->character_count(); ++j)
      CHECK(inner_product(t->row(i), t->row(j)) == Cyclotomic(i == j ? 1 : 0));

  // Natural permutation character of Alt(5): <pi, 1> = number of orbits = 1
  // (Burnside count as the independent oracle).
  std::vector<Cyclotomic> fix(t->class_count());
  i64 burnside_sum = 0;
  for (int j = 0; j < t->class_count(); ++j) {
    const Permutation& rep = t->classes()[j].representative;
    int fixed = 0;
    for (int pt = 0; pt < rep.degree(); ++pt)
      if (rep(pt) == pt) ++fixed;
    fix[j] = Cyclotomic(fixed);
    burnside_sum += t->classes()[j].size * fixed;
  }
  CHECK(burnside_sum / t->order() == 1);
  ClassFunction pi = t->class_function(fix);
  CHECK(inner_product(pi, t->row(t->trivial_row())) == Cyclotomic(1));

  TablePtr t2 = character_table(symmetric_group(3));
  CHECK_THROWS_AS(inner_product(t->row(0), t2->row(0)), DomainError);
}

TEST_CASE("induction") {
  PermutationGroup a5 = alternating_group(5);
  TablePtr ta5 = character_table(a5);
  SubgroupHandle d10 = normalizer(a5, sylow_subgroup(a5, 5).group);
  REQUIRE(d10.order() == 10);
  TablePtr td10 = character_table(d10.group);

  ClassFunction ind = induce(td10->row(td10->trivial_row()), ta5);
  CHECK(ind.degree() == Cyclotomic(6));
  // Decomposition has non-negative integer multiplicities: 1 + (degree 5).
  for (int i = 0; i < ta5->character_count(); ++i) {
    Cyclotomic m = inner_product(ind, ta5->row(i));
    CHECK(m.is_integer());
    i64 expected = (i == ta5->trivial_row() || ta5->degree(i) == 5) ? 1 : 0;
    CHECK(m == Cyclotomic(Rational(expected)));
  }

  // Induction from the trivial subgroup gives the regular character.
  SubgroupHandle triv = make_subgroup(a5, {});
  TablePtr ttriv = character_table(triv.group);
  ClassFunction reg = induce(ttriv->row(0), ta5);
  CHECK(reg.values[0] == Cyclotomic(60));
  for (int j = 1; j < ta5->class_count(); ++j) CHECK(reg.values[j] == Cyclotomic(0));
}

TEST_CASE("restriction and Frobenius reciprocity") {
  PermutationGroup s4 = symmetric_group(4);
  TablePtr ts4 = character_table(s4);
  SubgroupHandle s3 = make_subgroup(
      s4, {Permutation::from_cycles(4, {{1, 2}}), Permutation::from_cycles(4, {{1, 2, 3}})});
  REQUIRE(s3.order() == 6);
  TablePtr ts3 = character_table(s3.group);

  ClassFunction one_down = restrict_to(ts4->row(ts4->trivial_row()), ts3);
  for (const auto& v : one_down.values) CHECK(v == Cyclotomic(1));

  for (int i = 0; i < ts4->character_count(); ++i) {
    ClassFunction down = restrict_to(ts4->row(i), ts3);
    CHECK(down.values[0] == ts4->row_values(i)[0]); // degree preserved
    for (int j = 0; j < ts3->character_count(); ++j) {
      ClassFunction up = induce(ts3->row(j), ts4);
      CHECK(inner_product(down, ts3->row(j)) == inner_product(ts4->row(i), up));
    }
  }
}

TEST_CASE("galois action on characters") {
  SECTION("sigma for p=5 is trivial on Alt(5)") {
    TablePtr t = character_table(alternating_group(5));
    GaloisMap s = sigma_exponent(5, t->exponent());
    CHECK(s.is_identity());
    for (int i = 0; i < t->character_count(); ++i) {
      ClassFunction img = apply_galois_to_character(t->row(i), s);
      CHECK(img.values == t->row_values(i));
    }
  }
  SECTION("complex conjugation fixes real rows and permutes the rest") {
    TablePtr t = character_table(semidirect_cyclic(25, 4, 7));
    GaloisMap conj(t->exponent(), t->exponent() - 1);
    for (int i = 0; i < t->character_count(); ++i) {
      ClassFunction img = apply_galois_to_character(t->row(i), conj);
      auto found = t->find_row(img.values);
      REQUIRE(found.has_value());
      bool real = true;
      for (const auto& v : t->row_values(i))
        if (v.conjugate() != v) real = false;
      if (real) CHECK(*found == i);
    }
  }
  SECTION("sigma p=5 moves a conductor-25 degree-4 row of C25:C4") {
    TablePtr t = character_table(semidirect_cyclic(25, 4, 7));
    GaloisMap s = sigma_exponent(5, t->exponent());
    bool moved_some = false;
    for (int i = 0; i < t->character_count(); ++i) {
      if (t->degree(i) != 4) continue;
      i64 maxcond = 1;
      for (const auto& v : t->row_values(i)) maxcond = std::max(maxcond, v.conductor());
      ClassFunction img = apply_galois_to_character(t->row(i), s);
      auto found = t->find_row(img.values);
      REQUIRE(found.has_value());
      CHECK(t->degree(*found) == 4);
      if (maxcond == 25) {
        CHECK(*found != i);
        moved_some = true;
      } else {
        CHECK(*found == i);
      }
    }
    CHECK(moved_some);
  }
  SECTION("any exponent unit permutes the rows") {
    for (const PermutationGroup& g : {alternating_group(5), semidihedral16(), psl2(7)}) {
      TablePtr t = character_table(g);
      for (i64 j = 1; j < t->exponent(); ++j) {
        if (gcd_i64(j, t->exponent()) != 1) continue;
        GaloisMap map(t->exponent(), j);
        std::set<int> hit;
        for (int i = 0; i < t->character_count(); ++i) {
          auto found = t->find_row(apply_galois_to_character(t->row(i), map).values);
          REQUIRE(found.has_value());
          hit.insert(*found);
        }
        CHECK(static_cast<int>(hit.size()) == t->character_count());
      }
    }
  }
}

TEST_CASE("rationality flags") {
  SECTION("degree-3 rows of Alt(5) at p=5") {
    TablePtr t = character_table(alternating_group(5));
    for (int i = 0; i < t->character_count(); ++i) {
      if (t->degree(i) != 3) continue;
      RationalityFlags f = rationality_flags(t->row(i), 5);
      CHECK_FALSE(f.p_rational);
      CHECK(f.almost_p_rational);
      CHECK(f.sigma_fixed);
    }
  }
  SECTION("rational-valued characters pass everything") {
    TablePtr t = character_table(symmetric_group(4));
    for (int i = 0; i < t->character_count(); ++i)
      for (i64 p : {2, 3}) {
        RationalityFlags f = rationality_flags(t->row(i), p);
        CHECK(f.p_rational);
        CHECK(f.almost_p_rational);
        CHECK(f.sigma_fixed);
      }
  }
  SECTION("SD16 faithful degree-2 row with sqrt(-2) at p=2") {
    TablePtr t = character_table(semidihedral16());
    int found = -1;
    for (int i = 0; i < t->character_count(); ++i) {
      if (t->degree(i) != 2) continue;
      for (const auto& v : t->row_values(i))
        if (v.conductor() == 8) found = i;
    }
    REQUIRE(found >= 0);
    RationalityFlags f = rationality_flags(t->row(found), 2);
    CHECK_FALSE(f.p_rational);
    CHECK_FALSE(f.almost_p_rational);
    CHECK(f.sigma_fixed);
  }
  SECTION("sigma-fixed iff almost p-rational for odd p") {
    for (const PermutationGroup& g :
         {alternating_group(5), psl2(7), frobenius_group(13, 4), semidirect_cyclic(25, 4, 7)}) {
      TablePtr t = character_table(g);
      for (i64 p : {3, 5, 7, 13}) {
        if (g.order() % p != 0) continue;
        for (int i = 0; i < t->character_count(); ++i) {
          RationalityFlags f = rationality_flags(t->row(i), p);
          CHECK(f.sigma_fixed == f.almost_p_rational);
        }
      }
    }
  }
  SECTION("sigma-fixed iff 2-rational for odd degree at p=2") {
    for (const PermutationGroup& g :
         {symmetric_group(4), alternating_group(5), semidihedral16(), dihedral_group(8), psl2(7)}) {
      TablePtr t = character_table(g);
      for (int i = 0; i < t->character_count(); ++i) {
        if (t->degree(i) % 2 == 0) continue;
        RationalityFlags f = rationality_flags(t->row(i), 2);
        CHECK(f.sigma_fixed == f.p_rational);
      }
    }
  }
}

TEST_CASE("dihedral 2-group probe: sigma-invariant rows are 2-rational") {
  // Recorded outcome: for the dihedral groups of order 16, 32, 64 every
  // sigma-invariant irreducible character is 2-rational (the semidihedral
  // group of order 16 is the regression example with a sigma-fixed
  // irrational value instead; see the SD16 section above).
  for (i64 n : {8, 16, 32}) {
    TablePtr t = character_table(dihedral_group(n));
    for (int i = 0; i < t->character_count(); ++i) {
      RationalityFlags f = rationality_flags(t->row(i), 2);
      if (f.sigma_fixed) CHECK(f.p_rational);
    }
  }
}

TEST_CASE("class counts") {
  CHECK(k_classcount(frobenius_group(13, 3)) == 7);
  CHECK(k_classcount(cyclic_group(17)) == 17);
  CHECK(k_classcount(symmetric_group(4)) == 5);
}

TEST_CASE("inflation embeds quotient characters") {
  PermutationGroup s4 = symmetric_group(4);
  PermutationGroup v4(4, {Permutation::from_cycles(4, {{1, 2}, {3, 4}}),
                          Permutation::from_cycles(4, {{1, 3}, {2, 4}})});
  QuotientGroup q = quotient_group(s4, v4);
  TablePtr tq = character_table(q.group);
  TablePtr ts4 = character_table(s4);
  auto kernel_elems = v4.elements();
  for (int i = 0; i < tq->character_count(); ++i) {
    ClassFunction lifted = inflate(tq->row(i), q, kernel_elems, ts4);
    auto found = ts4->find_row(lifted.values);
    CHECK(found.has_value());
  }
}

TEST_CASE("table rendering mentions classes and degrees") {
  TablePtr t = character_table(symmetric_group(3));
  std::string s = format_table(*t);
  CHECK(s.find("group order 6") != std::string::npos);
  CHECK(s.find("deg 2") != std::string::npos);
}

TEST_CASE("class count cap raises a resource error") {
  // Cyclic(400) had 400 classes; keep it cheap with an abelian 2-group.
  PermutationGroup big = direct_product({cyclic_group(8), cyclic_group(8), cyclic_group(8)});
  CHECK_THROWS_AS(character_table(big), ResourceError);
}
