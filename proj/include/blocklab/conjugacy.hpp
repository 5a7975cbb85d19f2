#pragma once

#include <deque>
#include <unordered_map>
#include <vector>

#include "blocklab/group.hpp"

namespace blocklab {

struct ConjugacyClass {
  Permutation representative; // lexicographically least member
  i64 size = 0;
  i64 element_order = 0;
};

/// The conjugacy classes of a group, in deterministic order: identity class
/// first, then ascending (element order, class size, lexicographically least
/// representative image sequence). class_of is total on the group.
class ConjugacyClassSet {
public:
  ConjugacyClassSet() = default;

  explicit ConjugacyClassSet(const PermutationGroup& g, i64 cap = kElementCap) {
    std::vector<Permutation> elems = g.elements(cap);
    std::unordered_map<std::vector<int>, int, PermHash> cls;
    cls.reserve(elems.size() * 2);
    std::vector<std::vector<Permutation>> members;
    for (const auto& x : elems) {
      if (cls.count(x.images())) continue;
      // Orbit of x under conjugation by the generators.
      int idx = static_cast<int>(members.size());
      members.emplace_back();
      std::deque<Permutation> queue{x};
      cls.emplace(x.images(), idx);
      while (!queue.empty()) {
        Permutation y = std::move(queue.front());
        queue.pop_front();
        members[idx].push_back(y);
        for (const auto& gen : g.generators()) {
          Permutation z = y.conjugate_by(gen);
          if (cls.emplace(z.images(), idx).second) queue.push_back(z);
        }
      }
    }
    // Canonical order and representatives.
    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Permutation> reps(members.size());
    std::vector<i64> ords(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      reps[i] = *std::min_element(members[i].begin(), members[i].end());
      ords[i] = reps[i].order();
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      i64 sa = static_cast<i64>(members[a].size());
      i64 sb = static_cast<i64>(members[b].size());
      if (ords[a] != ords[b]) return ords[a] < ords[b];
      if (sa != sb) return sa < sb;
      return reps[a].images() < reps[b].images();
    });
    std::vector<int> new_index(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = static_cast<int>(i);
    classes_.resize(members.size());
    members_.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      int ni = new_index[i];
      classes_[ni] = ConjugacyClass{reps[i], static_cast<i64>(members[i].size()), ords[i]};
      members_[ni] = std::move(members[i]);
    }
    for (auto& [img, idx] : cls) idx = new_index[idx];
    class_of_ = std::move(cls);
    group_order_ = g.order();
  }

  int count() const { return static_cast<int>(classes_.size()); }
  const ConjugacyClass& operator[](int i) const { return classes_[i]; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<Permutation>& members(int i) const { return members_[i]; }
  i64 group_order() const { return group_order_; }

  int class_of(const Permutation& x) const {
    auto it = class_of_.find(x.images());
    if (it == class_of_.end()) throw DomainError("element does not lie in the group");
    return it->second;
  }

  bool contains(const Permutation& x) const { return class_of_.count(x.images()) > 0; }

  /// Class of the inverses of class i.
  int inverse_class(int i) const { return class_of(classes_[i].representative.inverse()); }

  /// Class of rep(i)^t.
  int power_class(int i, i64 t) const { return class_of(classes_[i].representative.power(t)); }

private:
  std::vector<ConjugacyClass> classes_;
  std::vector<std::vector<Permutation>> members_;
  std::unordered_map<std::vector<int>, int, PermHash> class_of_;
  i64 group_order_ = 0;
};

inline ConjugacyClassSet conjugacy_classes(const PermutationGroup& g, i64 cap = kElementCap) {
  return ConjugacyClassSet(g, cap);
}

/// k(G): the number of conjugacy classes.
inline i64 k_classcount(const PermutationGroup& g, i64 cap = kElementCap) {
  return ConjugacyClassSet(g, cap).count();
}

} // namespace blocklab
