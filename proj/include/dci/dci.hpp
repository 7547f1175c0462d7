#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dci/abstract_group.hpp"
#include "dci/construction.hpp"
#include "dci/group.hpp"
#include "dci/orbital.hpp"
#include "dci/report.hpp"

namespace dci {

/// Cayley digraph data: arcs a -> s*a for s in `connection`.
struct CayleySpec {
  AbstractGroup group;
  std::vector<Elem> connection;
};

/// Throws DomainError if the identity is in the connection set.
ArcSet cayley_arcs(const CayleySpec& spec);

/// A regular subgroup with points labeled by its elements: point x is
/// labeled by the unique t_x with base^t_x = x, so `group` multiplies
/// points as mul(x, y) = x^(t_y) and the base point is the identity.
struct RegularEmbedding {
  PermGroup subgroup;
  Point base = 0;
  std::vector<Permutation> element_at;
  AbstractGroup group;
};

/// Throws DomainError if `r` is not regular.
RegularEmbedding embed_regular(const PermGroup& r, Point base = 0);

/// Labels of the out-neighbors of the base point.
std::vector<Elem> connection_set(const RegularEmbedding& e, const ArcSet& arcs);

/// All regular subgroups of a transitive group, by backtracking over the
/// elements sending the base point to each uncovered point.
std::vector<PermGroup> find_regular_subgroups(const PermGroup& g, std::uint64_t cap = kDefaultElementCap);

struct ConjugacyClass {
  std::vector<std::size_t> members;       // indices into the input list
  std::vector<Permutation> conjugators;   // rep^conjugators[t] = members[t]
};

std::vector<ConjugacyClass> classify_conjugacy(const PermGroup& g, const std::vector<PermGroup>& subs,
                                               std::uint64_t cap = kDefaultElementCap);

/// Serialized refutation record. All element sets are point labels under
/// R1's regular embedding at base point 0.
struct DciCertificate {
  ConstructionParams params;
  std::size_t degree = 0;
  Permutation tau1, tau2, rho1, rho2;
  std::string witness_kind;                  // "digraph" or "colored"
  std::vector<std::uint32_t> colors;         // orbital colors of G in the witness
  std::vector<std::vector<Elem>> s_sets;     // one set for "digraph", one per color otherwise
  std::vector<std::vector<Elem>> t_sets;
  Permutation iso;                           // Cay(R,S) -> Cay(R,T)
  std::uint64_t aut_count = 0;
  std::vector<std::pair<std::string, bool>> checks;
};

struct WitnessResult {
  bool fallback = false;
  std::vector<std::uint32_t> colors;
  std::vector<std::vector<Elem>> s_sets;
  std::vector<std::vector<Elem>> t_sets;
  Permutation iso;
};

struct RefutationOptions {
  std::uint64_t seed = 0;
  SearchBudget budget{};
  std::uint64_t element_cap = kDefaultElementCap;
  /// Color subsets examined before falling back to the colored witness.
  std::uint64_t witness_subset_cap = 1ULL << 20;
};

/// Searches unions of off-diagonal orbital colors of G by increasing size,
/// then lexicographically, for a digraph whose automorphism group is G.
/// Candidates of one size are evaluated in parallel.
WitnessResult witness_digraphs(const ConstructionBundle& b, const RefutationOptions& opt = {});

namespace serial {
WitnessResult witness_digraphs(const ConstructionBundle& b, const RefutationOptions& opt = {});
}  // namespace serial

struct RefutationStats {
  std::size_t regular_subgroups = 0;
  std::size_t regular_isomorphic_to_r = 0;
  std::size_t conjugacy_classes = 0;
};

/// Build, verify, confirm 2-closedness and non-conjugacy, extract the
/// witness, assemble and self-check the certificate. A failed stage throws
/// VerificationError carrying the stage name.
DciCertificate babai_refutation(const ConstructionParams& params, const RefutationOptions& opt = {},
                                RefutationStats* stats = nullptr);

struct VerifyOutcome {
  bool ok = false;
  std::string failed_check;
  std::vector<std::string> log;
};

/// Recomputes everything from the certificate data alone.
VerifyOutcome verify_certificate(const DciCertificate& c);

/// Fixed field order, base-10 integers, arrays in index order.
std::string to_json(const DciCertificate& c);
/// Throws ParseError on malformed input.
DciCertificate certificate_from_json(const std::string& text);

/// The witness digraph of a "digraph" certificate on Omega.
ArcSet witness_arcs(const DciCertificate& c);

/// A pair of connection sets giving isomorphic Cayley digraphs that no
/// automorphism of the group relates.
struct ViolatingPair {
  std::vector<Elem> s;
  std::vector<Elem> t;
};

/// Exhaustive DCI test for |R| <= 8. Connection sets are grouped by
/// canonical form; each class contributing k > 1 Aut(R)-orbits yields the
/// pairs (first orbit, j-th orbit) for j = 2..k, each set being the least
/// member of its orbit. Empty iff R is DCI (up to size_cap).
std::vector<ViolatingPair> dci_brute(const AbstractGroup& r, std::size_t size_cap = 64);

namespace serial {
std::vector<ViolatingPair> dci_brute(const AbstractGroup& r, std::size_t size_cap = 64);
}  // namespace serial

/// Links a (k = 1, r = 1) certificate to the brute-force violations of C_8.
/// Other parameters throw DomainError.
Report cross_validate(const DciCertificate& c);

}  // namespace dci
