#pragma once

#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "blocklab/errors.hpp"
#include "blocklab/numeric.hpp"

namespace blocklab {

/// A permutation of {0, ..., degree-1}, stored as its image list.
/// All external I/O (cycle notation, spec files) is 1-based.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(int degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0);
  }

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int x : images_) {
      if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x])
        throw DomainError("permutation image list is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(int degree) { return Permutation(degree); }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  /// Composition: (a * b)(x) = b(a(x)); a is applied first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DomainError("degree mismatch in permutation product");
    std::vector<int> im(a.degree());
    for (int i = 0; i < a.degree(); ++i) im[i] = b.images_[a.images_[i]];
    Permutation r;
    r.images_ = std::move(im);
    return r;
  }

  Permutation inverse() const {
    std::vector<int> im(degree());
    for (int i = 0; i < degree(); ++i) im[images_[i]] = i;
    Permutation r;
    r.images_ = std::move(im);
    return r;
  }

  /// this^g = g^-1 * this * g.
  Permutation conjugate_by(const Permutation& g) const {
    std::vector<int> im(degree());
    const auto& gi = g.images_;
    std::vector<int> ginv(degree());
    for (int i = 0; i < degree(); ++i) ginv[gi[i]] = i;
    for (int i = 0; i < degree(); ++i) im[i] = gi[images_[ginv[i]]];
    Permutation r;
    r.images_ = std::move(im);
    return r;
  }

  Permutation power(i64 e) const {
    i64 o = order();
    e %= o;
    if (e < 0) e += o;
    Permutation r = identity(degree());
    Permutation b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Order = lcm of cycle lengths.
  i64 order() const {
    std::vector<bool> seen(degree(), false);
    i64 o = 1;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      i64 len = 0;
      int j = i;
      do {
        seen[j] = true;
        j = images_[j];
        ++len;
      } while (j != i);
      o = lcm_i64(o, len);
    }
    return o;
  }

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return images_ != o.images_; }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  /// Cycle notation with 1-based points, fixed points omitted; "()" for the identity.
  std::string cycle_string() const {
    std::vector<bool> seen(degree(), false);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) {
        seen[i] = true;
        continue;
      }
      os << '(';
      int j = i;
      bool first = true;
      do {
        if (!first) os << ' ';
        os << (j + 1);
        seen[j] = true;
        j = images_[j];
        first = false;
      } while (j != i);
      os << ')';
      any = true;
    }
    if (!any) return "()";
    return os.str();
  }

  /// Builds a permutation of the given degree from 1-based cycles.
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    std::vector<bool> used(degree, false);
    for (const auto& cyc : cycles) {
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        int a = cyc[t] - 1;
        int b = cyc[(t + 1) % cyc.size()] - 1;
        if (a < 0 || a >= degree || b < 0 || b >= degree)
          throw DomainError("cycle point out of range 1.." + std::to_string(degree));
        if (used[a]) throw DomainError("repeated point " + std::to_string(a + 1) + " in cycles");
        used[a] = true;
        im[a] = b;
      }
    }
    return Permutation(std::move(im));
  }

private:
  std::vector<int> images_;
};

struct PermHash {
  std::size_t operator()(const std::vector<int>& v) const {
    // FNV-1a over the image words.
    u64 h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<u64>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const Permutation& p) const { return (*this)(p.images()); }
};

struct PermEq {
  bool operator()(const Permutation& a, const Permutation& b) const { return a == b; }
};

} // namespace blocklab
