// blocklab: principal p-block / Galois-statistic workbench CLI.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "blocklab/sweep.hpp"

namespace {

using namespace blocklab;

std::optional<std::string> resolve_cache(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("BLOCKLAB_CACHE"); env && *env) return std::string(env);
  return std::nullopt;
}

ModuleAction parse_module_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open module file " + path);
  ModuleAction a;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "p") {
      if (!(ls >> a.p)) throw ParseError(path + ":" + std::to_string(lineno) + ": bad p line");
    } else if (key == "dim") {
      if (!(ls >> a.dim))
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad dim line");
    } else if (key == "mat") {
      if (a.dim < 1)
        throw ParseError(path + ":" + std::to_string(lineno) + ": 'dim' must precede 'mat'");
      std::vector<std::vector<i64>> m(a.dim, std::vector<i64>(a.dim));
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
          if (!(ls >> m[i][j]))
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": mat needs dim*dim entries");
      a.matrices.push_back(std::move(m));
    } else {
      throw ParseError(path + ":" + std::to_string(lineno) + ": unknown keyword '" + key + "'");
    }
  }
  if (a.p == 0 || a.dim == 0) throw ParseError(path + ": missing 'p' or 'dim' header");
  return a;
}

int run_table(const std::string& specfile, const std::string& cacheflag) {
  GroupSpec spec = parse_spec_file(specfile);
  PermutationGroup g = build_group(spec);
  TableProvider provider(resolve_cache(cacheflag));
  TablePtr t = provider.get(g);
  std::cout << "name " << spec.name << "\n" << format_table(*t);
  return 0;
}

int run_blocks(const std::string& specfile, i64 p, const std::string& cacheflag) {
  GroupSpec spec = parse_spec_file(specfile);
  PermutationGroup g = build_group(spec);
  TableProvider provider(resolve_cache(cacheflag));
  TablePtr t = provider.get(g);
  BlockPartition part = block_partition(t, p);
  std::cout << "name " << spec.name << "\n" << format_blocks(part);
  K0SigmaResult k = k0_sigma(t, p);
  std::cout << "k0_sigma(B0) = " << k.count << (k.degenerate ? " (degenerate: p does not divide |G|)" : "")
            << "\n";
  return 0;
}

int run_verify(const std::string& specfile, i64 p, bool as_json, const std::string& cacheflag) {
  GroupSpec spec = parse_spec_file(specfile);
  PermutationGroup g = build_group(spec);
  TableProvider provider(resolve_cache(cacheflag));
  TheoremAReport r = theorem_a_verdict_cached(spec.name, g, p, provider);
  if (as_json)
    std::cout << report_to_json(r).dump(2) << "\n";
  else
    std::cout << report_to_text(r) << "\n";
  if (r.error) {
    if (r.error_kind == "resource") return 3;
    return 1;
  }
  return r.consistent ? 0 : 2;
}

int run_cyclic_defect(const std::string& specfile, i64 p, const std::string& cacheflag) {
  GroupSpec spec = parse_spec_file(specfile);
  PermutationGroup g = build_group(spec);
  TableProvider provider(resolve_cache(cacheflag));
  TablePtr t = provider.get(g);
  CyclicSylowContext ctx = cyclic_sylow_context(t, p);
  BlockPartition part = block_partition(t, p);
  ExNexSplit split = split_ex_nex(ctx, part);
  std::cout << "name " << spec.name << "\np=" << p << " |P|=" << ctx.sylow_order
            << " |N|=" << ctx.normalizer_sub.order() << " |C|=" << ctx.centralizer_sub.order()
            << " e=|N:C|=" << ctx.twist_exponents.size() << "\n";
  std::cout << "lambda orbits (" << split.orbits.size() << "):\n";
  for (std::size_t i = 0; i < split.orbits.size(); ++i) {
    std::cout << "  orbit " << i << ": {";
    for (std::size_t j = 0; j < split.orbits[i].size(); ++j)
      std::cout << (j ? " " : "") << split.orbits[i][j];
    std::cout << "}";
    if (std::find(split.degenerate_orbits.begin(), split.degenerate_orbits.end(),
                  static_cast<int>(i)) != split.degenerate_orbits.end())
      std::cout << " (degenerate: full level set, rational orbit sum)";
    std::cout << "\n";
  }
  std::cout << "nex (p-rational):";
  for (int m : split.nex) std::cout << " chi" << m << "(deg " << t->degree(m) << ")";
  std::cout << "\nex:";
  for (int m : split.ex) std::cout << " chi" << m << "(deg " << t->degree(m) << ")";
  std::cout << "\nlabel map (base 1_G):\n";
  bool labeling_ok = true;
  ClassFunction base = t->row(t->trivial_row());
  for (std::size_t i = 0; i < split.orbits.size(); ++i) {
    if (std::find(split.degenerate_orbits.begin(), split.degenerate_orbits.end(),
                  static_cast<int>(i)) != split.degenerate_orbits.end())
      continue;
    try {
      int img = exceptional_for_label(ctx, part, base, LambdaLabel{split.orbits[i][0]});
      std::cout << "  orbit " << i << " -> chi" << img << " (deg " << t->degree(img) << ")\n";
    } catch (const ConsistencyError& e) {
      std::cout << "  orbit " << i << " -> CONSISTENCY FAILURE: " << e.what() << "\n";
      labeling_ok = false;
    }
  }
  LocalGlobalReport lg = local_global_report(t, p);
  std::cout << format_local_global(lg);
  bool ok = labeling_ok && lg.sizes_agree && lg.almost_rational_iff_order_p;
  return ok ? 0 : 2;
}

int run_orbits(const std::string& modulefile) {
  ModuleAction a = parse_module_file(modulefile);
  OrbitCount c = module_orbit_count(a);
  i64 size = module_vector_count(a);
  std::cout << "p=" << a.p << " dim=" << a.dim << " |V|=" << size
            << " generators=" << a.matrices.size() << "\n";
  std::cout << "orbits (zero included) = " << c.total << "\n";
  std::cout << "nonzero orbits = " << c.nonzero << "\n";
  return 0;
}

int run_sweep(const std::string& corpusdir, const SweepOptions& opts, bool as_json) {
  namespace fs = std::filesystem;
  std::vector<GroupSpec> corpus;
  std::vector<std::string> files;
  if (!fs::is_directory(corpusdir)) throw ParseError("corpus directory not found: " + corpusdir);
  for (const auto& entry : fs::directory_iterator(corpusdir))
    if (entry.is_regular_file() && entry.path().extension() == ".gspec")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) corpus.push_back(parse_spec_file(f));
  SweepResult result = sweep(corpus, opts);
  if (as_json) {
    std::cout << sweep_to_json(result);
    std::cerr << "cache_hits=" << result.cache.hits << " cache_misses=" << result.cache.misses
              << "\n";
  } else {
    std::cout << sweep_to_text(result);
  }
  return result.exit_code();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"blocklab: principal p-blocks, the Galois sigma-action, and k0_sigma bounds"};
  app.set_version_flag("--version", blocklab::kToolVersion);
  app.require_subcommand(1);

  std::string specfile, cachedir, modulefile, corpusdir;
  blocklab::i64 prime = 0;
  bool as_json = false;

  CLI::App* table = app.add_subcommand("table", "print the exact character table");
  table->add_option("spec", specfile, "group spec file")->required();
  table->add_option("--cache", cachedir, "character table cache directory");

  CLI::App* blocks = app.add_subcommand("blocks", "print the p-block partition");
  blocks->add_option("spec", specfile, "group spec file")->required();
  blocks->add_option("-p,--prime", prime, "prime p")->required();
  blocks->add_option("--cache", cachedir, "character table cache directory");

  CLI::App* verify = app.add_subcommand("verify", "Theorem A verdict for one (group, p)");
  verify->add_option("spec", specfile, "group spec file")->required();
  verify->add_option("-p,--prime", prime, "prime p")->required();
  verify->add_flag("--json", as_json, "emit JSON");
  verify->add_option("--cache", cachedir, "character table cache directory");

  CLI::App* cyclic = app.add_subcommand("cyclic-defect", "section-5 machinery report");
  cyclic->add_option("spec", specfile, "group spec file")->required();
  cyclic->add_option("-p,--prime", prime, "prime p")->required();
  cyclic->add_option("--cache", cachedir, "character table cache directory");

  CLI::App* orbits = app.add_subcommand("orbits", "orbit count of a matrix module action");
  orbits->add_option("--module", modulefile, "module action file")->required();

  CLI::App* sweepcmd = app.add_subcommand("sweep", "run Theorem A over a corpus");
  sweepcmd->add_option("--corpus", corpusdir, "directory of .gspec files")->required();
  blocklab::i64 max_order = 0, prime_filter = 0;
  int jobs = 1;
  sweepcmd->add_option("--max-order", max_order, "skip groups larger than this");
  sweepcmd->add_option("--prime", prime_filter, "restrict to one prime");
  sweepcmd->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  sweepcmd->add_flag("--json", as_json, "emit canonical JSON");
  sweepcmd->add_option("--cache", cachedir, "character table cache directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) return run_table(specfile, cachedir);
    if (blocks->parsed()) return run_blocks(specfile, prime, cachedir);
    if (verify->parsed()) return run_verify(specfile, prime, as_json, cachedir);
    if (cyclic->parsed()) return run_cyclic_defect(specfile, prime, cachedir);
    if (orbits->parsed()) return run_orbits(modulefile);
    if (sweepcmd->parsed()) {
      blocklab::SweepOptions opts;
      if (max_order > 0) opts.max_order = max_order;
      if (prime_filter > 0) opts.prime_filter = prime_filter;
      opts.jobs = jobs;
      opts.cache_dir = resolve_cache(cachedir);
      return run_sweep(corpusdir, opts, as_json);
    }
  } catch (const blocklab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const blocklab::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const blocklab::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
