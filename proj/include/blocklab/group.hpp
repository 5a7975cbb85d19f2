#pragma once

#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "blocklab/perm.hpp"

namespace blocklab {

/// Default cap on full element enumeration. The paper's verifiable instances
/// are small; everything here is desk scale.
inline constexpr i64 kElementCap = 20000;

namespace detail {

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's generators, with transversal elements mapping the base point to
/// each orbit point.
struct StabLevel {
  int base_point = -1;
  std::vector<Permutation> gens;
  std::unordered_map<int, Permutation> transversal; // orbit point -> u with base^u = point
};

} // namespace detail

/// A permutation group given by generators, with a base and strong generating
/// set built deterministically (Schreier-Sims) as the certificate for order
/// and membership.
class PermutationGroup {
public:
  PermutationGroup() : degree_(1), order_(1) {}

  PermutationGroup(int degree, std::vector<Permutation> generators)
      : degree_(degree), gens_(std::move(generators)) {
    if (degree < 1) throw DomainError("degree must be >= 1");
    for (const auto& g : gens_)
      if (g.degree() != degree_) throw DomainError("generator degree mismatch");
    // Drop identity generators; they carry no information.
    std::erase_if(gens_, [](const Permutation& g) { return g.is_identity(); });
    build_chain();
  }

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  i64 order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).is_identity();
  }

  /// All elements in deterministic BFS order (identity first). Throws
  /// ResourceError when the group is larger than the cap.
  std::vector<Permutation> elements(i64 cap = kElementCap) const {
    if (order_ > cap)
      throw ResourceError("group order " + std::to_string(order_) +
                          " exceeds element cap " + std::to_string(cap));
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(order_));
    std::unordered_set<std::vector<int>, PermHash> seen;
    std::deque<Permutation> queue;
    Permutation id = Permutation::identity(degree_);
    seen.insert(id.images());
    queue.push_back(id);
    while (!queue.empty()) {
      Permutation x = std::move(queue.front());
      queue.pop_front();
      out.push_back(x);
      for (const auto& g : gens_) {
        Permutation y = x * g;
        if (seen.insert(y.images()).second) queue.push_back(y);
      }
    }
    if (static_cast<i64>(out.size()) != order_)
      throw InternalError("element enumeration disagrees with BSGS order");
    return out;
  }

  /// Exponent of the group: lcm of element orders.
  i64 exponent(i64 cap = kElementCap) const {
    i64 e = 1;
    for (const auto& x : elements(cap)) e = lcm_i64(e, x.order());
    return e;
  }

private:
  int degree_;
  std::vector<Permutation> gens_;
  std::vector<detail::StabLevel> chain_;
  i64 order_ = 1;

  /// Smallest point moved by g, or -1 for the identity.
  static int first_moved(const Permutation& g) {
    for (int i = 0; i < g.degree(); ++i)
      if (g(i) != i) return i;
    return -1;
  }

  /// Sifts g through the chain; the residue is the identity iff g is a member.
  Permutation sift(const Permutation& g) const {
    Permutation h = g;
    for (const auto& lvl : chain_) {
      int img = h(lvl.base_point);
      auto it = lvl.transversal.find(img);
      if (it == lvl.transversal.end()) return h;
      h = h * it->second.inverse();
    }
    return h;
  }

  void recompute_orbit(std::size_t level) {
    auto& lvl = chain_[level];
    lvl.transversal.clear();
    lvl.transversal.emplace(lvl.base_point, Permutation::identity(degree_));
    std::deque<int> queue{lvl.base_point};
    while (!queue.empty()) {
      int pt = queue.front();
      queue.pop_front();
      const Permutation u = lvl.transversal.at(pt);
      for (const auto& g : lvl.gens) {
        int img = g(pt);
        if (!lvl.transversal.count(img)) {
          lvl.transversal.emplace(img, u * g);
          queue.push_back(img);
        }
      }
    }
  }

  /// Adds g (known to fix the base points of all earlier levels) at `level`,
  /// then restores the strong-generation invariant by sifting all Schreier
  /// generators from this level down.
  void extend(std::size_t level, const Permutation& g) {
    if (g.is_identity()) return;
    if (level == chain_.size()) {
      detail::StabLevel lvl;
      lvl.base_point = first_moved(g);
      chain_.push_back(std::move(lvl));
    }
    {
      Permutation residue = g;
      for (std::size_t l = level; l < chain_.size(); ++l) {
        int img = residue(chain_[l].base_point);
        auto it = chain_[l].transversal.find(img);
        if (it == chain_[l].transversal.end()) break;
        residue = residue * it->second.inverse();
      }
      if (residue.is_identity()) return;
    }
    chain_[level].gens.push_back(g);
    recompute_orbit(level);
    // Schreier generators of the stabilizer at this level. Snapshots: the
    // recursion below may reallocate chain_.
    const std::vector<Permutation> gens_snapshot = chain_[level].gens;
    const std::unordered_map<int, Permutation> trans_snapshot = chain_[level].transversal;
    std::vector<int> orbit;
    orbit.reserve(trans_snapshot.size());
    for (const auto& [pt, u] : trans_snapshot) orbit.push_back(pt);
    std::sort(orbit.begin(), orbit.end());
    for (int pt : orbit) {
      const Permutation& u = trans_snapshot.at(pt);
      for (const auto& s : gens_snapshot) {
        const Permutation& u2 = trans_snapshot.at(s(pt));
        Permutation schreier = u * s * u2.inverse();
        if (!schreier.is_identity()) extend(level + 1, schreier);
      }
    }
  }

  void build_chain() {
    chain_.clear();
    for (const auto& g : gens_) extend(0, g);
    order_ = 1;
    for (const auto& lvl : chain_) order_ *= static_cast<i64>(lvl.transversal.size());
  }
};

/// Incrementally generated subgroup: used to reduce large element sets to a
/// small generating set.
inline std::vector<Permutation> reduce_generators(int degree,
                                                  const std::vector<Permutation>& elems) {
  std::vector<Permutation> gens;
  PermutationGroup current(degree, {});
  for (const auto& x : elems) {
    if (x.is_identity() || current.contains(x)) continue;
    gens.push_back(x);
    current = PermutationGroup(degree, gens);
  }
  return gens;
}

/// Builds a PermutationGroup from generators.
inline PermutationGroup generate_group(int degree, std::vector<Permutation> generators) {
  return PermutationGroup(degree, std::move(generators));
}

} // namespace blocklab
