#pragma once

#include <cstdint>
#include <iosfwd>

#include "dci/group.hpp"
#include "dci/perm.hpp"
#include "dci/report.hpp"

namespace dci {

/// Degree ceiling for pipelines that run closure or witness searches.
inline constexpr std::size_t kPipelineDegreeCeiling = 64;
/// Degree ceiling for order, relation and non-conjugacy checks.
inline constexpr std::size_t kAlgebraDegreeCeiling = 1000;

/// A = C_k (r = 1) or C_k x C_3 (r = 3), k odd; Omega = Z_8 x Z_k x Z_r.
struct ConstructionParams {
  std::uint32_t k = 1;
  std::uint32_t r = 1;

  std::size_t degree() const { return std::size_t{8} * k * r; }
  friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

/// Throws DomainError unless k is odd, r is 1 or 3 and 8kr <= max_degree.
void validate(const ConstructionParams& p, std::size_t max_degree = kAlgebraDegreeCeiling);

/// The two regular copies of A x| C_8 and the group they generate.
///
///   tau1 : i -> i + 1 along (0 1 2 3 4 5 6 7)
///   tau2 : i along (0 1 6 7 4 5 2 3)
///   rho1 : j -> j + 1 for even i, j - 1 for odd i
///   rho2 : l -> l + 1 for even i, l - 1 for odd i
///   h    : (1 5)(3 7) on i
///
/// R1 = <tau1, rho1, rho2>, R2 = <tau2, rho1, rho2>, H = <tau1, tau2>,
/// G = <R1, R2>.
struct ConstructionBundle {
  ConstructionParams params;
  Permutation tau1, tau2, rho1, rho2, h;
  PermGroup r1, r2, h_group, g;

  std::size_t degree() const { return params.degree(); }
};

ConstructionBundle build(const ConstructionParams& params, std::uint64_t seed = 0);

/// Rebuilds the groups of a bundle from (possibly altered) generators.
ConstructionBundle assemble(const ConstructionParams& params, Permutation tau1, Permutation tau2,
                            Permutation rho1, Permutation rho2, std::uint64_t seed = 0);

/// Check names, in report order.
namespace checks {
inline constexpr const char* kHOrder = "h_order_16";
inline constexpr const char* kHNormalForm = "h_normal_form";
inline constexpr const char* kTau2ConjH = "tau2_conj_h_is_tau2_pow5";
inline constexpr const char* kIsomorphic = "r1_r2_isomorphic_semidirect";
inline constexpr const char* kRegular = "r1_r2_regular";
inline constexpr const char* kIndexTwo = "r1_index_2_in_g";
}  // namespace checks

/// Runs the six structural checks; never throws on a failed check.
Report verify_bundle(const ConstructionBundle& b);

/// Throws VerificationError naming the first failed check.
void require_bundle(const ConstructionBundle& b);

struct HNormalForm {
  std::uint32_t l = 0;    // power of tau2, in Z_8
  std::uint32_t eps = 0;  // power of h, 0 or 1
};

/// The unique (l, eps) with p = tau2^l h^eps. Throws DomainError if p is
/// not in H.
HNormalForm normal_form_in_H(const Permutation& p, const ConstructionBundle& b);

/// Degree plus tau1, tau2, rho1, rho2, h in the generator text format.
void write_bundle(std::ostream& out, const ConstructionBundle& b);

}  // namespace dci
