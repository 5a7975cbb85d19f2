#pragma once

#include <atomic>
#include <chrono>
#include <thread>

#include "blocklab/bounds.hpp"
#include "blocklab/cache.hpp"
#include "blocklab/cyclicdefect.hpp"
#include "blocklab/groupspec.hpp"
#include "blocklab/version.hpp"

namespace blocklab {

/// theorem_a_verdict wired through a shared table provider (memo + cache).
inline TheoremAReport theorem_a_verdict_cached(const std::string& name,
                                               const PermutationGroup& g, i64 p,
                                               TableProvider& provider,
                                               i64 cap = kElementCap) {
  TheoremAReport r;
  r.group_name = name;
  r.group_order = g.order();
  r.p = p;
  try {
    if (g.order() % p != 0) throw DomainError("theorem_a_verdict: p must divide |G|");
    r.sylow_order = p_part(g.order(), p);
    TablePtr t = provider.get(g, cap);
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
    if (witness) {
      ConditionIiiShape shape = condition_iii_shape(fq.quotient.group, p, *witness, cap);
      r.cond_iii = shape.matches;
      r.fq_normal_p = shape.normal_sylow_p;
      r.fq_complement_order = shape.complement_order;
    }
    if (!r.fq_normal_p) {
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
  } catch (const std::exception& e) {
    r.error = e.what();
    r.error_kind = "internal";
  }
  return r;
}

struct SweepOptions {
  std::optional<i64> max_order;
  std::optional<i64> prime_filter;
  int jobs = 1;
  std::optional<std::string> cache_dir;
};

struct SweepItem {
  std::string group_name;
  i64 p = 0;
  TheoremAReport report;
  double millis = 0.0;
};

struct SweepResult {
  std::vector<SweepItem> items; // ordered by (group name, p)
  i64 instances = 0;
  i64 equalities = 0;
  i64 strict = 0;
  i64 failures = 0;
  i64 violations = 0;    // inequality or biconditional failures
  i64 resource_errors = 0;
  i64 skipped_groups = 0; // filtered by max_order
  CacheStats cache;

  /// 0 ok, 2 mathematical violation, 3 resource cap, 1 other failure.
  int exit_code() const {
    if (violations > 0) return 2;
    if (resource_errors > 0) return 3;
    if (failures > 0) return 1;
    return 0;
  }
};

/// Runs the Theorem A verification over every (group, prime-divisor) pair of
/// the corpus. Deterministic output order by (group name, p) regardless of
/// the worker count.
inline SweepResult sweep(const std::vector<GroupSpec>& corpus, const SweepOptions& opts) {
  struct Task {
    std::string name;
    GroupSpec spec;
    i64 p;
  };
  std::vector<Task> tasks;
  SweepResult result;
  std::vector<std::pair<std::string, std::string>> parse_failures;
  for (const GroupSpec& spec : corpus) {
    PermutationGroup g;
    try {
      g = build_group(spec);
    } catch (const std::exception& e) {
      // Recorded as a per-item failure with p = 0.
      SweepItem item;
      item.group_name = spec.name;
      item.p = 0;
      item.report.group_name = spec.name;
      item.report.error = e.what();
      item.report.error_kind = "domain";
      result.items.push_back(std::move(item));
      continue;
    }
    if (opts.max_order && g.order() > *opts.max_order) {
      ++result.skipped_groups;
      continue;
    }
    for (auto [p, e] : factorize(g.order())) {
      if (opts.prime_filter && p != *opts.prime_filter) continue;
      tasks.push_back(Task{spec.name, spec, p});
    }
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.p < b.p;
  });

  TableProvider provider(opts.cache_dir);
  std::vector<SweepItem> computed(tasks.size());
  std::atomic<std::size_t> next{0};
  int jobs = std::max(1, opts.jobs);
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const Task& task = tasks[i];
      auto t0 = std::chrono::steady_clock::now();
      PermutationGroup g = build_group(task.spec);
      TheoremAReport rep = theorem_a_verdict_cached(task.name, g, task.p, provider);
      auto t1 = std::chrono::steady_clock::now();
      SweepItem item;
      item.group_name = task.name;
      item.p = task.p;
      item.report = std::move(rep);
      item.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
      computed[i] = std::move(item);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& item : computed) result.items.push_back(std::move(item));

  for (const SweepItem& item : result.items) {
    ++result.instances;
    const TheoremAReport& r = item.report;
    if (r.error) {
      ++result.failures;
      if (r.error_kind == "resource") ++result.resource_errors;
      continue;
    }
    if (!r.consistent) {
      ++result.failures;
      ++result.violations;
    }
    if (r.equality)
      ++result.equalities;
    else
      ++result.strict;
  }
  result.cache = provider.stats();
  return result;
}

inline nlohmann::ordered_json report_to_json(const TheoremAReport& r) {
  nlohmann::ordered_json j;
  j["group"] = r.group_name;
  j["order"] = r.group_order;
  j["p"] = r.p;
  if (r.error) {
    j["error"] = *r.error;
    j["error_kind"] = r.error_kind;
    return j;
  }
  j["sylow_order"] = r.sylow_order;
  j["sylow_cyclic"] = r.sylow_cyclic;
  j["k0_sigma"] = r.k0_sigma;
  j["bound"] = r.bound;
  j["verdict"] = r.equality ? "equality" : "strict";
  j["cond_i"] = r.cond_i;
  if (r.cond_i_witness)
    j["cond_i_witness"] = *r.cond_i_witness;
  else
    j["cond_i_witness"] = nullptr;
  j["cond_ii"] = r.cond_ii;
  j["cond_iii"] = r.cond_iii;
  nlohmann::ordered_json fq;
  fq["order"] = r.fq_order;
  fq["normal_p"] = r.fq_normal_p;
  if (r.fq_complement_order)
    fq["complement_order"] = *r.fq_complement_order;
  else
    fq["complement_order"] = nullptr;
  j["frobenius_quotient"] = std::move(fq);
  j["consistent"] = r.consistent;
  j["question71_flag"] = r.question71_flag;
  return j;
}

/// Canonical JSON: run-invariant (no timings, no cache statistics), byte
/// identical across repeated, parallel and cached runs.
inline std::string sweep_to_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["instances"] = result.instances;
  j["equalities"] = result.equalities;
  j["strict"] = result.strict;
  j["failures"] = result.failures;
  j["skipped_groups"] = result.skipped_groups;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const SweepItem& item : result.items) reports.push_back(report_to_json(item.report));
  j["reports"] = std::move(reports);
  return j.dump(2) + "\n";
}

inline std::string report_to_text(const TheoremAReport& r) {
  std::ostringstream os;
  os << r.group_name << " p=" << r.p;
  if (r.error) {
    os << " ERROR(" << r.error_kind << "): " << *r.error;
    return os.str();
  }
  os << " k0s=" << r.k0_sigma << " bound=" << r.bound << ' '
     << (r.equality ? "EQUALITY" : "strict") << " [i" << (r.cond_i ? "✓" : "✗")
     << " ii" << (r.cond_ii ? "✓" : "✗") << " iii" << (r.cond_iii ? "✓" : "✗")
     << "]";
  if (!r.consistent) os << " INCONSISTENT";
  if (r.question71_flag)
    os << " *** QUESTION-7.1 CANDIDATE: k0_sigma in S_p with non-cyclic Sylow ***";
  return os.str();
}

inline std::string sweep_to_text(const SweepResult& result, bool with_timing = true) {
  std::ostringstream os;
  for (const SweepItem& item : result.items) {
    os << report_to_text(item.report);
    if (with_timing && !item.report.error) {
      os.precision(1);
      os << std::fixed << "  (" << item.millis << " ms)";
      os.unsetf(std::ios_base::floatfield);
    }
    os << "\n";
  }
  os << "instances=" << result.instances << " equalities=" << result.equalities
     << " strict=" << result.strict << " failures=" << result.failures;
  if (result.skipped_groups) os << " skipped=" << result.skipped_groups;
  if (with_timing)
    os << " cache_hits=" << result.cache.hits << " cache_misses=" << result.cache.misses;
  os << "\n";
  return os.str();
}

} // namespace blocklab
