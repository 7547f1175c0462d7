#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dci {

using Point = std::uint32_t;

/// A point of Z_8 x Z_k x Z_r.
struct TripleCoord {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t l = 0;

  friend bool operator==(const TripleCoord&, const TripleCoord&) = default;
};

/// Flattens (i, j, l) to i + 8j + 8kl. Throws DomainError when a component
/// is out of range for (k, r).
Point encode(TripleCoord c, std::uint32_t k, std::uint32_t r);
TripleCoord decode(Point p, std::uint32_t k, std::uint32_t r);

bool is_bijection(std::span<const Point> images);

/// A bijection of {0, ..., n-1} stored as its image array.
///
/// Products act left to right: compose(p, q) first applies p and then q,
/// so x^(pq) = (x^p)^q. Every operation taking two permutations requires
/// equal degrees and throws DomainError otherwise.
class Permutation {
 public:
  Permutation() = default;

  /// Throws DomainError unless `images` is a bijection of [0, size).
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  std::optional<Point> smallest_moved_point() const noexcept;

  /// Disjoint cycles of length > 1, each starting at its smallest point,
  /// ordered by that point.
  std::vector<std::vector<Point>> cycles() const;

  /// Cycle notation, "()" for the identity.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// g^-1 p g.
Permutation conjugate(const Permutation& p, const Permutation& g);

/// p^e; negative exponents use the inverse.
Permutation power(const Permutation& p, std::int64_t e);

/// lcm of the cycle lengths.
std::uint64_t element_order(const Permutation& p);

/// Sorted cycle lengths, fixed points counted as 1-cycles.
std::vector<std::size_t> cycle_type(const Permutation& p);

/// Builds a permutation from disjoint cycles. A point repeated within or
/// across cycles, or a point >= degree, throws DomainError.
Permutation from_cycles(const std::vector<std::vector<Point>>& cycles,
                        std::size_t degree);

}  // namespace dci
