#pragma once

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>

#include "blocklab/chartab.hpp"

namespace blocklab {

/// Content key of a group: FNV-1a over (degree, generator image lists).
inline std::string table_cache_key(const PermutationGroup& g) {
  u64 h = 1469598103934665603ull;
  auto mix = [&h](u64 v) {
    h ^= v + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  };
  mix(static_cast<u64>(g.degree()));
  for (const auto& gen : g.generators()) {
    mix(0xabcdefull);
    for (int x : gen.images()) mix(static_cast<u64>(x));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline constexpr int kCacheVersion = 1;

inline nlohmann::ordered_json table_to_json(const CharacterTable& t) {
  nlohmann::ordered_json j;
  j["version"] = kCacheVersion;
  j["degree"] = t.group().degree();
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const auto& g : t.group().generators()) gens.push_back(g.images());
  j["generators"] = std::move(gens);
  j["order"] = t.order();
  j["exponent"] = t.exponent();
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (int i = 0; i < t.class_count(); ++i) {
    nlohmann::ordered_json c;
    c["rep"] = t.classes()[i].representative.images();
    c["size"] = t.classes()[i].size;
    c["order"] = t.classes()[i].element_order;
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < t.character_count(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& v : t.row_values(i)) row.push_back(v.serialize());
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

/// Reconstructs a table from a cache record; throws on any mismatch with the
/// given group (wrong version, shape, class data, or degree arithmetic).
inline TablePtr table_from_json(const PermutationGroup& g, const nlohmann::json& j,
                                i64 cap = kElementCap) {
  if (!j.is_object() || j.value("version", -1) != kCacheVersion)
    throw ParseError("cache record version mismatch");
  if (j.at("degree").get<int>() != g.degree()) throw ParseError("cache record degree mismatch");
  const auto& gens = j.at("generators");
  if (gens.size() != g.generators().size()) throw ParseError("cache record generator mismatch");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].get<std::vector<int>>() != g.generators()[i].images())
      throw ParseError("cache record generator mismatch");
  if (j.at("order").get<i64>() != g.order()) throw ParseError("cache record order mismatch");
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& row : j.at("rows")) {
    std::vector<Cyclotomic> r;
    for (const auto& v : row) r.push_back(Cyclotomic::deserialize(v.get<std::string>()));
    rows.push_back(std::move(r));
  }
  TablePtr t = CharacterTable::from_cached(g, std::move(rows), cap);
  // Cross-check the recorded class data against the recomputed classes.
  const auto& classes = j.at("classes");
  if (static_cast<int>(classes.size()) != t->class_count())
    throw ParseError("cache record class count mismatch");
  for (int i = 0; i < t->class_count(); ++i) {
    if (classes[i].at("rep").get<std::vector<int>>() !=
            t->classes()[i].representative.images() ||
        classes[i].at("size").get<i64>() != t->classes()[i].size ||
        classes[i].at("order").get<i64>() != t->classes()[i].element_order)
      throw ParseError("cache record class data mismatch");
  }
  i64 sum = 0;
  for (i64 d : t->degrees()) {
    if (d < 1) throw ParseError("cache record has a non-positive degree");
    sum += d * d;
  }
  if (sum != t->order()) throw ParseError("cache record degrees violate sum-of-squares");
  return t;
}

struct CacheStats {
  i64 hits = 0;
  i64 misses = 0;
  i64 rejected = 0; // corrupt entries recomputed
};

/// Character-table provider with an in-process memo and an optional on-disk
/// cache directory. Disk writes are atomic (write-temp-then-rename); corrupt
/// entries are recomputed and overwritten with a warning.
class TableProvider {
public:
  TableProvider() = default;
  explicit TableProvider(std::optional<std::string> cache_dir)
      : cache_dir_(std::move(cache_dir)) {
    if (cache_dir_) std::filesystem::create_directories(*cache_dir_);
  }

  TablePtr get(const PermutationGroup& g, i64 cap = kElementCap) {
    std::string key = table_cache_key(g);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    TablePtr table;
    bool from_disk = false;
    if (cache_dir_) {
      std::filesystem::path path = entry_path(key);
      if (std::filesystem::exists(path)) {
        try {
          std::ifstream in(path);
          nlohmann::json j = nlohmann::json::parse(in);
          table = table_from_json(g, j, cap);
          from_disk = true;
        } catch (const std::exception& e) {
          std::cerr << "warning: corrupt cache entry " << path.string() << " (" << e.what()
                    << "); recomputing\n";
          table = nullptr;
          std::lock_guard<std::mutex> lock(mutex_);
          ++stats_.rejected;
        }
      }
    }
    if (!table) table = character_table(g, cap);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (from_disk)
        ++stats_.hits;
      else
        ++stats_.misses;
      memo_.emplace(key, table);
    }
    if (cache_dir_ && !from_disk) write_entry(key, *table);
    return table;
  }

  CacheStats stats() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return stats_;
  }

  bool disk_backed() const { return cache_dir_.has_value(); }

private:
  std::optional<std::string> cache_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, TablePtr> memo_;
  CacheStats stats_;

  std::filesystem::path entry_path(const std::string& key) const {
    return std::filesystem::path(*cache_dir_) / (key + ".json");
  }

  void write_entry(const std::string& key, const CharacterTable& t) const {
    std::filesystem::path path = entry_path(key);
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << table_to_json(t).dump(0) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }
};

} // namespace blocklab
