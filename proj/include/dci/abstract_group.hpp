#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dci/group.hpp"
#include "dci/perm.hpp"

namespace dci {

using Elem = std::uint32_t;

/// Ceiling for the backtracking operations on abstract groups.
inline constexpr std::size_t kAbstractOrderCeiling = 64;

/// A finite group given by its multiplication table. mul(a, b) is the
/// product "a then b", matching the permutation convention.
class AbstractGroup {
 public:
  AbstractGroup() = default;

  /// `table` is order x order, row-major. Throws DomainError unless the
  /// table has an identity element and is a Latin square.
  AbstractGroup(std::size_t order, std::vector<Elem> table);

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inverse(Elem a) const { return inverse_[a]; }
  Elem power(Elem a, std::int64_t e) const;
  std::uint64_t element_order(Elem a) const;
  const std::vector<Elem>& table() const noexcept { return table_; }

  bool is_latin_square() const;
  bool is_associative() const;
  bool is_abelian() const;

 private:
  std::size_t order_ = 0;
  std::vector<Elem> table_;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
};

/// A permutation group flattened to a table, with the element list that
/// fixes the indexing. Index 0 is the identity.
struct EnumeratedGroup {
  AbstractGroup group;
  std::vector<Permutation> elements;
  std::unordered_map<Permutation, Elem, PermutationHash> index;

  Elem index_of(const Permutation& p) const;
};

EnumeratedGroup to_abstract(const PermGroup& g, std::uint64_t cap = 4096);

/// Images of every element under a map between abstract groups.
using GroupMap = std::vector<Elem>;

/// Greedy generating set: scan elements by decreasing order (ties by
/// index) and keep each one outside the subgroup generated so far.
std::vector<Elem> generating_set(const AbstractGroup& g);

/// Extends gens[i] -> images[i] to a homomorphism, or nullopt when the
/// assignment is inconsistent. `gens` must generate `from`.
std::optional<GroupMap> extend_homomorphism(const AbstractGroup& from, const std::vector<Elem>& gens,
                                            const AbstractGroup& to, const std::vector<Elem>& images);

bool is_isomorphism(const AbstractGroup& from, const AbstractGroup& to, const GroupMap& map);

/// Backtracks over images of generating_set(g1). Orders above the ceiling
/// throw CapacityError.
std::optional<GroupMap> abstract_isomorphism(const AbstractGroup& g1, const AbstractGroup& g2);
std::vector<GroupMap> abstract_automorphisms(const AbstractGroup& g);

/// Right regular action x -> x*s over generating_set(g), on |g| points.
PermGroup regular_representation(const AbstractGroup& g);

/// A map on elements viewed as a permutation of {0, ..., |g|-1}.
Permutation as_permutation(const GroupMap& map);

// Small-group library.
AbstractGroup cyclic_group(std::size_t n);
AbstractGroup direct_product(const AbstractGroup& a, const AbstractGroup& b);
/// C_m x| C_n where the generator of C_n acts on C_m by x -> a*x.
/// Requires a^n = 1 mod m.
AbstractGroup cyclic_semidirect(std::size_t m, std::size_t n, std::size_t a);
/// Dicyclic group of order 4m: <x, y | x^2m, y^2 = x^m, y^-1 x y = x^-1>.
AbstractGroup dicyclic_group(std::size_t m);

struct NamedGroup {
  std::string name;
  AbstractGroup group;
};

/// Pairwise non-isomorphic groups of order <= 16 carried by the library.
std::vector<NamedGroup> small_group_table();

/// Resolves names such as "c8", "c2xc4", "c2xc2xc2", "d4", "q8".
std::optional<AbstractGroup> group_by_name(const std::string& name);

}  // namespace dci
