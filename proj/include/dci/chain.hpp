#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dci/perm.hpp"

namespace dci {

/// Base and strong generating set with explicit transversals.
///
/// Level i stores the strong generators fixing base points 0..i-1, the
/// orbit of base point i under them, and for every orbit point x a coset
/// representative u_x with base^u_x = x.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;
    std::vector<std::optional<Permutation>> transversal_inverse;
  };

  struct SiftResult {
    Permutation residue;
    std::size_t level;  // first level whose orbit missed, or levels().size()
  };

  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  /// Randomized Schreier-Sims (product-replacement sampling, seeded) followed
  /// by a deterministic pass that sifts every Schreier generator, so the
  /// result is exact regardless of the seed. Base points are taken as the
  /// smallest point moved by the element that forces a new level.
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> gens,
                               std::uint64_t seed = 0);

  std::size_t degree() const noexcept { return degree_; }
  std::span<const Level> levels() const noexcept { return levels_; }
  std::vector<Point> base() const;

  /// Product of orbit lengths. Throws CapacityError past 2^64 - 1.
  std::uint64_t order() const;

  SiftResult sift(const Permutation& p, std::size_t from = 0) const;
  bool contains(const Permutation& p) const;

  /// Calls `f` on every group element; stops early when `f` returns false.
  template <class F>
  void for_each_element(F&& f) const {
    Permutation id = Permutation::identity(degree_);
    walk(levels_.size(), id, f);
  }

 private:
  template <class F>
  bool walk(std::size_t level, const Permutation& acc, F& f) const {
    if (level == 0) return f(acc);
    const Level& lv = levels_[level - 1];
    for (Point x : lv.orbit) {
      if (!walk(level - 1, compose(acc, *lv.transversal[x]), f)) return false;
    }
    return true;
  }

  void add_strong(const Permutation& h, std::size_t from, std::size_t to, std::vector<bool>& dirty);
  void rebuild_orbit(std::size_t level);
  void complete(std::vector<bool>& dirty);

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace dci
