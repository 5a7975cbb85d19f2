#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "blocklab/sweep.hpp"

using namespace blocklab;

namespace {

std::vector<GroupSpec> tiny_corpus() {
  std::vector<GroupSpec> c;
  c.push_back(parse_spec("name a5\nconstruct Alt(5)\n"));
  c.push_back(parse_spec("name s4\nconstruct Sym(4)\n"));
  c.push_back(parse_spec("name f13_3\nconstruct Frobenius(13,3)\n"));
  c.push_back(parse_spec("name c12\nconstruct Cyclic(12)\n"));
  return c;
}

} // namespace

TEST_CASE("spec parsing") {
  SECTION("generator spec") {
    GroupSpec s = parse_spec("name A5\ndegree 5\ngen (1 2 3 4 5)\ngen (3 4 5)\n");
    CHECK(s.name == "A5");
    CHECK(s.has_generators);
    CHECK(build_group(s).order() == 60);
  }
  SECTION("constructor spec") {
    GroupSpec s = parse_spec("name F52\nconstruct Frobenius(5,2)");
    CHECK(s.has_construct);
    CHECK(build_group(s).order() == 10);
  }
  SECTION("nested constructors") {
    GroupSpec s = parse_spec("name w\nconstruct Wreath(Alt(5),2)\n");
    CHECK(build_group(s).order() == 7200);
    GroupSpec d = parse_spec("name v\nconstruct DirectProduct(5,5)\n");
    CHECK(build_group(d).order() == 25);
    GroupSpec m = parse_spec("name m\nconstruct DirectProduct(Sym(3),4)\n");
    CHECK(build_group(m).order() == 24);
  }
  SECTION("comments, tags, blank lines") {
    GroupSpec s = parse_spec("# corpus entry\nname x\n\nconstruct Cyclic(6) # inline\ntag abelian\n");
    CHECK(s.tags == std::vector<std::string>{"abelian"});
    CHECK(build_group(s).order() == 6);
  }
  SECTION("syntax errors carry positions") {
    CHECK_THROWS_WITH(parse_spec("name x\ndegree 3\ngen (1 2 2)\n"),
                      Catch::Matchers::ContainsSubstring("line 3") &&
                          Catch::Matchers::ContainsSubstring("repeated point"));
    CHECK_THROWS_AS(parse_spec("name x\ndegree 3\ngen (1 4)\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("degree 3\ngen (1 2)\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("name x\nbogus 7\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("name x\n"), ParseError);
  }
  SECTION("semantic errors name the constraint") {
    CHECK_THROWS_WITH(parse_spec("name x\nconstruct Frobenius(13,5)\n"),
                      Catch::Matchers::ContainsSubstring("divide p-1"));
    CHECK_THROWS_WITH(parse_spec("name x\nconstruct PSL2(8)\n"),
                      Catch::Matchers::ContainsSubstring("prime"));
    CHECK_THROWS_WITH(parse_spec("name x\nconstruct SemidirectCyclic(25,4,6)\n"),
                      Catch::Matchers::ContainsSubstring("order exactly e"));
  }
  SECTION("round trip normalizes whitespace only") {
    std::string messy = "name   A5\ndegree   5\ngen   (1 2 3 4 5)\ngen (3   4 5)\ntag  x\n";
    GroupSpec s = parse_spec(messy);
    std::string out = emit_spec(s);
    CHECK(out == "name A5\ndegree 5\ngen (1 2 3 4 5)\ngen (3 4 5)\ntag x\n");
    CHECK(emit_spec(parse_spec(out)) == out);
    GroupSpec c = parse_spec("name w\nconstruct  Wreath( Alt(5) , 2 )\n");
    CHECK(emit_spec(c) == "name w\nconstruct Wreath(Alt(5),2)\n");
    CHECK(emit_spec(parse_spec(emit_spec(c))) == emit_spec(c));
  }
}

TEST_CASE("table cache round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "blocklab_cache_test";
  fs::remove_all(dir);
  {
    TableProvider provider(dir.string());
    PermutationGroup g = alternating_group(5);
    TablePtr t1 = provider.get(g);
    CHECK(provider.stats().misses == 1);
    CHECK(provider.stats().hits == 0);
    // Fresh provider: hits the disk entry and reproduces the table exactly.
    TableProvider provider2(dir.string());
    TablePtr t2 = provider2.get(g);
    CHECK(provider2.stats().hits == 1);
    REQUIRE(t2->character_count() == t1->character_count());
    for (int i = 0; i < t1->character_count(); ++i)
      CHECK(t1->row_values(i) == t2->row_values(i));
  }
  SECTION("tampered entries produce a warning and a recompute") {
    TableProvider provider(dir.string());
    PermutationGroup g = alternating_group(5);
    std::string key = table_cache_key(g);
    fs::path entry = dir / (key + ".json");
    REQUIRE(fs::exists(entry));
    // Corrupt a degree digit: sum-of-squares validation rejects the record.
    std::ifstream in(entry);
    std::string body((std::istreambuf_iterator<char>(in)), {});
    in.close();
    auto pos = body.find("\"rows\"");
    REQUIRE(pos != std::string::npos);
    body.replace(body.find("1;1", pos), 3, "1;2");
    std::ofstream out(entry);
    out << body;
    out.close();
    TableProvider fresh(dir.string());
    TablePtr t = fresh.get(g);
    CHECK(fresh.stats().rejected == 1);
    CHECK(fresh.stats().misses == 1);
    CHECK(t->degree(t->trivial_row()) == 1);
  }
  fs::remove_all(dir);
}

TEST_CASE("sweep over a tiny corpus") {
  SweepOptions opts;
  SweepResult r = sweep(tiny_corpus(), opts);
  // a5: 2,3,5; s4: 2,3; f13_3: 3,13; c12: 2,3 -> 9 instances.
  CHECK(r.instances == 9);
  CHECK(r.failures == 0);
  CHECK(r.exit_code() == 0);
  for (const SweepItem& item : r.items) {
    REQUIRE_FALSE(item.report.error.has_value());
    CHECK(item.report.consistent);
    CHECK(item.report.k0_sigma >= item.report.bound);
  }
  // Deterministic order by (name, p).
  std::vector<std::pair<std::string, i64>> order;
  for (const SweepItem& item : r.items) order.emplace_back(item.group_name, item.p);
  std::vector<std::pair<std::string, i64>> expected = order;
  std::sort(expected.begin(), expected.end());
  CHECK(order == expected);
}

TEST_CASE("sweep JSON is byte-identical across runs, workers, and caching") {
  namespace fs = std::filesystem;
  SweepOptions serial;
  serial.jobs = 1;
  std::string base = sweep_to_json(sweep(tiny_corpus(), serial));

  SweepOptions parallel;
  parallel.jobs = 4;
  CHECK(sweep_to_json(sweep(tiny_corpus(), parallel)) == base);

  fs::path dir = fs::temp_directory_path() / "blocklab_sweep_cache_test";
  fs::remove_all(dir);
  SweepOptions cached;
  cached.cache_dir = dir.string();
  CHECK(sweep_to_json(sweep(tiny_corpus(), cached)) == base); // cold cache
  SweepOptions cached2 = cached;
  cached2.jobs = 3;
  SweepResult warm = sweep(tiny_corpus(), cached2);
  CHECK(sweep_to_json(warm) == base); // warm cache
  CHECK(warm.cache.hits >= 4); // concurrent first fetches may each hit disk
  fs::remove_all(dir);

  CHECK(base.find("\"tool_version\"") != std::string::npos);
  CHECK(base.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("sweep options") {
  SECTION("empty corpus") {
    SweepResult r = sweep({}, SweepOptions{});
    CHECK(r.instances == 0);
    CHECK(r.exit_code() == 0);
    CHECK(sweep_to_json(r).find("\"instances\": 0") != std::string::npos);
  }
  SECTION("max order skips groups") {
    SweepOptions opts;
    opts.max_order = 30;
    SweepResult r = sweep(tiny_corpus(), opts);
    CHECK(r.skipped_groups == 2); // a5 (60) and f13_3 (39)
    for (const SweepItem& item : r.items) CHECK(item.group_name != "a5");
  }
  SECTION("prime filter") {
    SweepOptions opts;
    opts.prime_filter = 3;
    SweepResult r = sweep(tiny_corpus(), opts);
    CHECK(r.instances == 4);
    for (const SweepItem& item : r.items) CHECK(item.p == 3);
  }
  SECTION("oversized group becomes a resource-error item, exit 3") {
    std::vector<GroupSpec> corpus{parse_spec("name s8\nconstruct Sym(8)\n")};
    SweepResult r = sweep(corpus, SweepOptions{});
    REQUIRE(r.instances == 4); // 40320 = 2^7 3^2 5 7
    for (const SweepItem& item : r.items) {
      REQUIRE(item.report.error.has_value());
      CHECK(item.report.error_kind == "resource");
    }
    CHECK(r.exit_code() == 3);
  }
}

TEST_CASE("text rendering shows the verdict line") {
  SweepOptions opts;
  SweepResult r = sweep({parse_spec("name a5\nconstruct Alt(5)\n")}, opts);
  std::string text = sweep_to_text(r, false);
  CHECK(text.find("a5 p=5 k0s=4 bound=4 EQUALITY") != std::string::npos);
  CHECK(text.find("i✓") != std::string::npos);
}
