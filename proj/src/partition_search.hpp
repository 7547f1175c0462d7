#pragma once

// Individualization-refinement search over arc-colored complete digraphs.
// Shared by the 2-closure, digraph automorphism, isomorphism and canonical
// form routines.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dci/perm.hpp"

namespace dci::search {

struct ColorMatrix {
  std::size_t n = 0;
  std::vector<std::uint32_t> c;  // row-major, c[u * n + v]

  std::uint32_t at(Point u, Point v) const { return c[u * n + v]; }
};

/// Ordered partition of the points. Non-singleton cells are kept sorted.
struct Partition {
  std::vector<std::vector<Point>> cells;
  std::vector<std::uint32_t> cell_of;

  static Partition unit(std::size_t n);
  bool discrete() const { return cells.size() == cell_of.size(); }
  /// First cell of minimum size > 1.
  std::size_t target_cell() const;
};

/// Splits cells by color degree counts into every cell until stable, and
/// returns a hash of the split history. The result is equivariant: relabeling
/// the matrix and the partition by the same permutation relabels the output.
std::uint64_t refine(const ColorMatrix& m, Partition& p);

/// Moves `v` into a singleton cell placed just before the rest of its cell.
void individualize(Partition& p, Point v);

bool preserves(const ColorMatrix& src, const ColorMatrix& dst, const Permutation& sigma);

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t cap) : cap_(cap) {}
  void tick();
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

/// Walks the first path of `src` (always individualizing the minimum point
/// of the target cell) and searches `dst` for color-preserving bijections
/// src -> dst whose images of the first-path points start with `prefix`.
class PathSearch {
 public:
  PathSearch(const ColorMatrix& src, const ColorMatrix& dst, NodeCounter& nodes);

  const std::vector<Point>& path() const { return path_; }
  const Partition& partition_at(std::size_t level) const { return partitions_[level]; }
  std::size_t target_cell_at(std::size_t level) const { return target_cells_[level]; }

  std::optional<Permutation> find(std::span<const Point> prefix);

 private:
  std::optional<Permutation> dfs(std::size_t level, const Partition& q, std::span<const Point> prefix);

  const ColorMatrix& src_;
  const ColorMatrix& dst_;
  NodeCounter& nodes_;
  std::vector<Point> path_;
  std::vector<Partition> partitions_;
  std::vector<std::size_t> target_cells_;
  std::vector<std::uint64_t> traces_;
  bool root_matches_ = true;
  Partition dst_root_;
};

/// Generators of the color-preserving automorphism group, collected level
/// by level along the first path, and the group order as the product of
/// the basic orbit lengths.
struct AutomorphismResult {
  std::vector<Permutation> generators;
  std::vector<std::size_t> orbit_lengths;
};

AutomorphismResult automorphisms(const ColorMatrix& m, NodeCounter& nodes);

/// Minimum relabeled matrix over all leaves of the search tree.
std::vector<std::uint32_t> canonical_matrix(const ColorMatrix& m, NodeCounter& nodes);

}  // namespace dci::search
