#include <catch2/catch_amalgamated.hpp>

#include "blocklab/constructions.hpp"
#include "blocklab/cyclicdefect.hpp"

using namespace blocklab;

TEST_CASE("context construction and eta values on Alt(5)") {
  TablePtr t = character_table(alternating_group(5));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  CHECK(ctx.sylow_order == 5);
  CHECK(ctx.normalizer_sub.order() == 10);
  CHECK(ctx.centralizer_sub.order() == 5);
  CHECK(ctx.twist_exponents == std::vector<i64>{1, 4}); // N/C inverts P

  EtaLambda eta = eta_lambda(ctx, LambdaLabel{1});
  CHECK(eta.value_at_exponent(0) == Cyclotomic(2)); // eta(1) = |N:C|
  CHECK(eta.value_at_exponent(1) == root_of_unity(5, 1) + root_of_unity(5, 4));
  CHECK(eta.value_at_exponent(2) == root_of_unity(5, 2) + root_of_unity(5, 3));

  CHECK_THROWS_AS(eta_lambda(ctx, LambdaLabel{0}), DomainError);
  CHECK(lambda_orbits(ctx).size() == 2);
}

TEST_CASE("eta is the identity on lambda when N = C") {
  TablePtr t = character_table(cyclic_group(5));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  CHECK(ctx.twist_exponents == std::vector<i64>{1});
  EtaLambda eta = eta_lambda(ctx, LambdaLabel{2});
  CHECK(eta.value_at_exponent(1) == root_of_unity(5, 2)); // eta = lambda itself
  CHECK(lambda_orbits(ctx).size() == 4);
}

TEST_CASE("star formula values on Alt(5)") {
  TablePtr t = character_table(alternating_group(5));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  ClassFunction one = t->row(t->trivial_row());
  ClassFunction star = star_with_eta(ctx, one, LambdaLabel{1});
  // On p-regular classes the value is eta(1) * chi = 2; on the two order-5
  // classes it is xi^k + xi^(-k) for the matching k.
  for (int j = 0; j < t->class_count(); ++j) {
    i64 o = t->classes()[j].element_order;
    if (o % 5 != 0) {
      CHECK(star.values[j] == Cyclotomic(2));
    } else {
      i64 s = ctx.in_p_exponent[ctx.section_of[j]];
      CHECK(star.values[j] == root_of_unity(5, s) + root_of_unity(5, 4 * s));
    }
  }
}

TEST_CASE("star outputs are generalized characters") {
  for (auto [g, p] : std::vector<std::pair<PermutationGroup, i64>>{
           {alternating_group(5), 5}, {psl2(7), 7}, {cyclic_group(5), 5},
           {semidirect_cyclic(25, 4, 7), 5}, {symmetric_group(5), 5}}) {
    TablePtr t = character_table(g);
    CyclicSylowContext ctx = cyclic_sylow_context(t, p);
    BlockPartition part = block_partition(t, p);
    ExNexSplit split = split_ex_nex(ctx, part);
    for (int chi : split.nex)
      for (const auto& orbit : split.orbits) {
        ClassFunction star = star_with_eta(ctx, t->row(chi), LambdaLabel{orbit[0]});
        for (int i = 0; i < t->character_count(); ++i)
          CHECK(inner_product(star, t->row(i)).is_integer());
      }
  }
}

TEST_CASE("degenerate orbits: full level sets carry rational sums") {
  // e = p-1 forces the level-1 orbit to sum over all of (Z/p)^x; the
  // attached character is p-rational and ex pairs with the other orbits.
  TablePtr t = character_table(semidirect_cyclic(25, 4, 7));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  ExNexSplit split = split_ex_nex(ctx, block_partition(t, 5));
  CHECK(split.orbits.size() == 6);
  CHECK(split.ex.size() == 5);
  REQUIRE(split.degenerate_orbits.size() == 1);
  const auto& deg = split.orbits[split.degenerate_orbits[0]];
  CHECK(deg == std::vector<i64>{5, 10, 15, 20});

  TablePtr t2 = character_table(symmetric_group(5));
  CyclicSylowContext ctx2 = cyclic_sylow_context(t2, 5);
  ExNexSplit split2 = split_ex_nex(ctx2, block_partition(t2, 5));
  CHECK(split2.orbits.size() == 1);
  CHECK(split2.ex.empty());
  CHECK(split2.degenerate_orbits.size() == 1);
}

TEST_CASE("ex/nex split") {
  SECTION("Alt(5), p=5: nex = {1,4}, ex = two degree-3 rows, 2 orbits") {
    TablePtr t = character_table(alternating_group(5));
    CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
    ExNexSplit split = split_ex_nex(ctx, block_partition(t, 5));
    REQUIRE(split.nex.size() == 2);
    REQUIRE(split.ex.size() == 2);
    std::multiset<i64> nexdeg, exdeg;
    for (int m : split.nex) nexdeg.insert(t->degree(m));
    for (int m : split.ex) exdeg.insert(t->degree(m));
    CHECK(nexdeg == std::multiset<i64>{1, 4});
    CHECK(exdeg == std::multiset<i64>{3, 3});
    CHECK(split.orbits.size() == 2);
  }
  SECTION("PSL2(7), p=7: |nex| = 3, |ex| = 2, 2 orbits") {
    TablePtr t = character_table(psl2(7));
    CyclicSylowContext ctx = cyclic_sylow_context(t, 7);
    CHECK(ctx.twist_exponents.size() == 3); // e = |N:C| = 3
    ExNexSplit split = split_ex_nex(ctx, block_partition(t, 7));
    CHECK(split.nex.size() == 3);
    CHECK(split.ex.size() == 2);
    CHECK(split.orbits.size() == 2);
  }
  SECTION("Cyclic(5), p=5: nex = {1}, 4 exceptional in 4 orbits") {
    TablePtr t = character_table(cyclic_group(5));
    CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
    ExNexSplit split = split_ex_nex(ctx, block_partition(t, 5));
    CHECK(split.nex.size() == 1);
    CHECK(split.ex.size() == 4);
    CHECK(split.orbits.size() == 4);
  }
  SECTION("non-cyclic Sylow is rejected") {
    TablePtr t = character_table(symmetric_group(4));
    CHECK_THROWS_AS(cyclic_sylow_context(t, 2), DomainError);
  }
}

TEST_CASE("exceptional labeling: well-defined, orbit-constant, injective") {
  for (auto [g, p] : std::vector<std::pair<PermutationGroup, i64>>{
           {alternating_group(5), 5}, {psl2(7), 7}, {cyclic_group(5), 5},
           {semidirect_cyclic(25, 4, 7), 5}}) {
    TablePtr t = character_table(g);
    CyclicSylowContext ctx = cyclic_sylow_context(t, p);
    BlockPartition part = block_partition(t, p);
    ExNexSplit split = split_ex_nex(ctx, part);
    ClassFunction base = t->row(t->trivial_row());
    std::set<int> images;
    for (std::size_t oi = 0; oi < split.orbits.size(); ++oi) {
      const auto& orbit = split.orbits[oi];
      bool degenerate = std::find(split.degenerate_orbits.begin(),
                                  split.degenerate_orbits.end(),
                                  static_cast<int>(oi)) != split.degenerate_orbits.end();
      if (degenerate) {
        // No non-p-rational constituent exists; reported, never resolved.
        CHECK_THROWS_AS(exceptional_for_label(ctx, part, base, LambdaLabel{orbit[0]}),
                        ConsistencyError);
        continue;
      }
      int label0 = exceptional_for_label(ctx, part, base, LambdaLabel{orbit[0]});
      for (i64 j : orbit)
        CHECK(exceptional_for_label(ctx, part, base, LambdaLabel{j}) == label0);
      images.insert(label0);
    }
    // Injective across non-degenerate orbits, image exactly the exceptional set.
    CHECK(images == std::set<int>(split.ex.begin(), split.ex.end()));
  }
}

TEST_CASE("labeling commutes with sigma") {
  // sigma is nontrivial on Irr(P) only for |P| > p; C25:C4 at p=5 exercises it.
  TablePtr t = character_table(semidirect_cyclic(25, 4, 7));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  BlockPartition part = block_partition(t, 5);
  ExNexSplit split = split_ex_nex(ctx, part);
  ClassFunction base = t->row(t->trivial_row());
  GaloisMap sigma = sigma_exponent(5, t->exponent());
  i64 jsigma = sigma_exponent(5, ctx.sylow_order).exponent;
  CHECK(jsigma == 6);
  for (std::size_t oi = 0; oi < split.orbits.size(); ++oi) {
    if (std::find(split.degenerate_orbits.begin(), split.degenerate_orbits.end(),
                  static_cast<int>(oi)) != split.degenerate_orbits.end())
      continue;
    const auto& orbit = split.orbits[oi];
    i64 j = orbit[0];
    int image = exceptional_for_label(ctx, part, base, LambdaLabel{j});
    int image_of_twisted =
        exceptional_for_label(ctx, part, base, LambdaLabel{j * jsigma % ctx.sylow_order});
    ClassFunction sigma_image = apply_galois_to_character(t->row(image), sigma);
    auto found = t->find_row(sigma_image.values);
    REQUIRE(found.has_value());
    CHECK(image_of_twisted == *found);
  }
  // Also: eta_lambda^sigma = eta_{lambda^sigma} value-wise.
  for (i64 j : {1, 2, 3}) {
    EtaLambda eta = eta_lambda(ctx, LambdaLabel{j});
    EtaLambda eta_tw = eta_lambda(ctx, LambdaLabel{j * jsigma % ctx.sylow_order});
    for (i64 s = 0; s < 25; ++s)
      CHECK(galois_apply(sigma, eta.value_at_exponent(s)) == eta_tw.value_at_exponent(s));
  }
}

TEST_CASE("alternate nex base gives the same exceptional set") {
  // The labeling depends on the chosen p-rational base chi; its image doesn't.
  TablePtr t = character_table(alternating_group(5));
  CyclicSylowContext ctx = cyclic_sylow_context(t, 5);
  BlockPartition part = block_partition(t, 5);
  ExNexSplit split = split_ex_nex(ctx, part);
  REQUIRE(split.degenerate_orbits.empty());
  for (int chi : split.nex) {
    std::set<int> images;
    for (const auto& orbit : split.orbits)
      images.insert(exceptional_for_label(ctx, part, t->row(chi), LambdaLabel{orbit[0]}));
    CHECK(images == std::set<int>(split.ex.begin(), split.ex.end()));
  }
}

TEST_CASE("local-global comparison") {
  SECTION("Alt(5), p=5") {
    LocalGlobalReport r = local_global_report(character_table(alternating_group(5)), 5);
    CHECK(r.k_b0_global == 4);
    CHECK(r.k_b0_local == 4);
    CHECK(r.k0_sigma_global == 4);
    CHECK(r.k0_sigma_local == 4);
    CHECK(r.sylow_is_p);
    CHECK(r.all_almost_p_rational_global);
    CHECK(r.sizes_agree);
    CHECK(r.almost_rational_iff_order_p);
  }
  SECTION("PSL2(7), p=7: F21 has 5 irreducibles") {
    LocalGlobalReport r = local_global_report(character_table(psl2(7)), 7);
    CHECK(r.k_b0_global == 5);
    CHECK(r.k_b0_local == 5);
    CHECK(r.k0_sigma_global == 5);
    CHECK(r.k0_sigma_local == 5);
    CHECK(r.sizes_agree);
    CHECK(r.almost_rational_iff_order_p);
  }
  SECTION("C25:C4, p=5: not all almost 5-rational, |P| = 25") {
    LocalGlobalReport r = local_global_report(character_table(semidirect_cyclic(25, 4, 7)), 5);
    CHECK_FALSE(r.all_almost_p_rational_global);
    CHECK_FALSE(r.sylow_is_p);
    CHECK(r.almost_rational_iff_order_p);
    CHECK(r.sizes_agree);
    CHECK(format_local_global(r).find("consistent") != std::string::npos);
  }
  SECTION("Lemma 5.2 consequence across cyclic-Sylow instances") {
    for (auto [g, p] : std::vector<std::pair<PermutationGroup, i64>>{
             {alternating_group(5), 3}, {symmetric_group(5), 5}, {psl2(7), 3},
             {frobenius_group(13, 4), 13}, {cyclic_group(9), 3}}) {
      LocalGlobalReport r = local_global_report(character_table(g), p);
      CHECK(r.almost_rational_iff_order_p);
    }
  }
}
