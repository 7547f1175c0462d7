#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "dci/group.hpp"
#include "dci/perm.hpp"

namespace dci {

inline constexpr std::size_t kSearchDegreeCeiling = 64;
inline constexpr std::size_t kBruteDegreeCeiling = 8;

struct SearchBudget {
  std::uint64_t node_cap = 10'000'000;
};

/// Coloring of all ordered pairs by the orbitals of a group. Colors are
/// numbered by first appearance in a row-major scan of the pair matrix.
class OrbitalColoring {
 public:
  OrbitalColoring(std::size_t degree, std::vector<std::uint32_t> colors, std::uint32_t num_colors);

  std::size_t degree() const noexcept { return degree_; }
  std::uint32_t num_colors() const noexcept { return num_colors_; }
  std::uint32_t color(Point u, Point v) const { return colors_[u * degree_ + v]; }
  std::span<const std::uint32_t> colors() const noexcept { return colors_; }

  bool is_diagonal_color(std::uint32_t c) const { return diagonal_[c]; }
  /// Off-diagonal colors in increasing order.
  std::vector<std::uint32_t> off_diagonal_colors() const;

 private:
  std::size_t degree_;
  std::vector<std::uint32_t> colors_;
  std::uint32_t num_colors_;
  std::vector<bool> diagonal_;
};

/// Loop-free set of ordered pairs on `degree` points, kept sorted.
class ArcSet {
 public:
  explicit ArcSet(std::size_t degree) : degree_(degree), adjacency_(degree * degree, false) {}
  /// Throws DomainError on loops or out-of-range endpoints.
  ArcSet(std::size_t degree, std::vector<std::pair<Point, Point>> arcs);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  const std::vector<std::pair<Point, Point>>& arcs() const noexcept { return arcs_; }
  bool has_arc(Point u, Point v) const { return adjacency_[u * degree_ + v]; }
  std::vector<Point> out_neighbors(Point u) const;

  friend bool operator==(const ArcSet& a, const ArcSet& b) {
    return a.degree_ == b.degree_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t degree_;
  std::vector<std::pair<Point, Point>> arcs_;
  std::vector<bool> adjacency_;
};

/// {(u^s, v^s) : (u, v) in a}.
ArcSet image(const ArcSet& a, const Permutation& s);

OrbitalColoring orbital_coloring(const PermGroup& g);

/// Color-preserving automorphism group by partition backtracking.
/// Degree above 64 or an exhausted node budget throws CapacityError.
PermGroup color_automorphisms(const OrbitalColoring& c, SearchBudget budget = {});

/// The largest group with the same orbitals as g.
PermGroup two_closure(const PermGroup& g, SearchBudget budget = {});

/// Every permutation of degree <= 8 preserving the orbitals of g, sorted.
/// The n! candidates are scanned in parallel.
std::vector<Permutation> brute_closure_elements(const PermGroup& g);
PermGroup brute_two_closure(const PermGroup& g);

/// Union of the given color classes. A diagonal color throws DomainError.
ArcSet arcs_of_colors(const OrbitalColoring& c, const std::set<std::uint32_t>& colors);

PermGroup digraph_automorphisms(const ArcSet& a, SearchBudget budget = {});

/// A permutation mapping a's arcs onto b's arcs, if any.
std::optional<Permutation> digraph_isomorphism(const ArcSet& a, const ArcSet& b,
                                               SearchBudget budget = {});

/// Adjacency matrix (row-major, 0/1) of the least relabeling over the
/// refinement search tree; equal iff the digraphs are isomorphic.
std::vector<std::uint32_t> canonical_form(const ArcSet& a, SearchBudget budget = {});

/// DOT digraph. With (k, r) given, vertices are labeled "(i,j,l)".
void write_dot(std::ostream& out, const ArcSet& a,
               std::optional<std::pair<std::uint32_t, std::uint32_t>> kr = std::nullopt);

/// `n` on the first line, then one "u v" line per arc.
void write_adjacency(std::ostream& out, const ArcSet& a);
ArcSet parse_adjacency(std::istream& in);

namespace serial {
std::vector<Permutation> brute_closure_elements(const PermGroup& g);
}  // namespace serial

}  // namespace dci
