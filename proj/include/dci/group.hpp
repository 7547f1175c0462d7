#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dci/chain.hpp"
#include "dci/perm.hpp"

namespace dci {

inline constexpr std::uint64_t kDefaultElementCap = 100000;

/// A permutation group given by generators. The stabilizer chain is built on
/// first use; copies share it, and concurrent first use is safe.
class PermGroup {
 public:
  /// An empty generator list denotes the trivial group.
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::uint64_t seed = 0);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const StabilizerChain& chain() const;

  std::uint64_t order() const { return chain().order(); }
  bool contains(const Permutation& p) const;

 private:
  struct Lazy {
    std::once_flag once;
    std::optional<StabilizerChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::uint64_t seed_;
  std::shared_ptr<Lazy> lazy_;
};

StabilizerChain schreier_sims(std::span<const Permutation> gens, std::uint64_t seed = 0);

std::uint64_t group_order(const PermGroup& g);
bool contains(const PermGroup& g, const Permutation& p);

/// All elements in chain order (identity first). Throws CapacityError when
/// |G| > cap.
std::vector<Permutation> elements(const PermGroup& g, std::uint64_t cap = kDefaultElementCap);

/// Orbits on [0, degree), each sorted, ordered by smallest point.
std::vector<std::vector<Point>> orbits(const PermGroup& g);

bool is_transitive(const PermGroup& g);
bool is_regular(const PermGroup& g);

std::vector<Permutation> elements_of_order(const PermGroup& g, std::uint64_t m,
                                           std::uint64_t cap = kDefaultElementCap);

/// A <= B, by generator membership.
bool is_subgroup(const PermGroup& a, const PermGroup& b);

/// Equality as sets: equal order plus generator membership.
bool same_group(const PermGroup& a, const PermGroup& b);

/// Group generated by `elements`, keeping only those not already in the
/// span of the previously kept ones.
PermGroup generated_by_filtered(std::size_t degree, const std::vector<Permutation>& elements);

/// Returns the first g in elements(G) with A^g = B, or nullopt. Requires
/// A, B <= G (DomainError otherwise) and |G| <= cap. Scans G's elements in
/// parallel; the result matches the serial scan.
std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& a,
                                                   const PermGroup& b,
                                                   std::uint64_t cap = kDefaultElementCap);

namespace serial {
std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& a,
                                                   const PermGroup& b,
                                                   std::uint64_t cap = kDefaultElementCap);
}  // namespace serial

}  // namespace dci
