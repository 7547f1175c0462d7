#include "dci/construction.hpp"

#include <array>
#include <ostream>

#include "dci/abstract_group.hpp"
#include "dci/error.hpp"
#include "dci/perm_io.hpp"

namespace dci {

namespace {

// Lifts an action on the first coordinate to Omega.
Permutation lift_first(const std::array<Point, 8>& act, std::uint32_t k, std::uint32_t r) {
  std::vector<Point> img(std::size_t{8} * k * r);
  for (Point p = 0; p < img.size(); ++p) {
    auto c = decode(p, k, r);
    c.i = act[c.i];
    img[p] = encode(c, k, r);
  }
  return Permutation(std::move(img));
}

std::array<Point, 8> cycle_action(const std::array<Point, 8>& cycle) {
  std::array<Point, 8> act{};
  for (std::size_t t = 0; t < 8; ++t) act[cycle[t]] = cycle[(t + 1) % 8];
  return act;
}

// Shifts coordinate j (which = 1) or l (which = 2) by +1 on even i, -1 on odd i.
Permutation parity_shift(int which, std::uint32_t k, std::uint32_t r) {
  std::vector<Point> img(std::size_t{8} * k * r);
  for (Point p = 0; p < img.size(); ++p) {
    auto c = decode(p, k, r);
    const bool even = c.i % 2 == 0;
    if (which == 1) {
      c.j = even ? (c.j + 1) % k : (c.j + k - 1) % k;
    } else {
      c.l = even ? (c.l + 1) % r : (c.l + r - 1) % r;
    }
    img[p] = encode(c, k, r);
  }
  return Permutation(std::move(img));
}

}  // namespace

void validate(const ConstructionParams& p, std::size_t max_degree) {
  if (p.k == 0 || p.k % 2 == 0) throw DomainError("k must be a positive odd integer");
  if (p.r != 1 && p.r != 3) throw DomainError("r must be 1 or 3");
  if (p.degree() > max_degree) {
    throw DomainError("degree 8kr = " + std::to_string(p.degree()) + " exceeds " +
                      std::to_string(max_degree));
  }
}

ConstructionBundle assemble(const ConstructionParams& params, Permutation tau1, Permutation tau2,
                            Permutation rho1, Permutation rho2, std::uint64_t seed) {
  const std::size_t n = params.degree();
  Permutation h = lift_first({0, 5, 2, 7, 4, 1, 6, 3}, params.k, params.r);
  PermGroup r1(n, {tau1, rho1, rho2}, seed);
  PermGroup r2(n, {tau2, rho1, rho2}, seed);
  PermGroup hg(n, {tau1, tau2}, seed);
  PermGroup g(n, {tau1, tau2, rho1, rho2}, seed);
  return ConstructionBundle{params,          std::move(tau1), std::move(tau2), std::move(rho1),
                            std::move(rho2), std::move(h),    std::move(r1),   std::move(r2),
                            std::move(hg),   std::move(g)};
}

ConstructionBundle build(const ConstructionParams& params, std::uint64_t seed) {
  validate(params);
  const auto k = params.k, r = params.r;
  return assemble(params, lift_first(cycle_action({0, 1, 2, 3, 4, 5, 6, 7}), k, r),
                  lift_first(cycle_action({0, 1, 6, 7, 4, 5, 2, 3}), k, r), parity_shift(1, k, r),
                  parity_shift(2, k, r), seed);
}

HNormalForm normal_form_in_H(const Permutation& p, const ConstructionBundle& b) {
  if (p.degree() != b.degree()) throw DomainError("normal_form_in_H: degree mismatch");
  Permutation t = Permutation::identity(b.degree());
  for (std::uint32_t l = 0; l < 8; ++l) {
    if (t == p) return {l, 0};
    if (compose(t, b.h) == p) return {l, 1};
    t = compose(t, b.tau2);
  }
  throw DomainError("normal_form_in_H: permutation is not in H");
}

Report verify_bundle(const ConstructionBundle& b) {
  Report rep;
  const std::size_t n = b.degree();
  const std::uint64_t kr = std::uint64_t{b.params.k} * b.params.r;

  const std::uint64_t h_order = b.h_group.order();
  rep.add(checks::kHOrder, h_order == 16, "|H| = " + std::to_string(h_order));

  {
    bool ok = h_order == 16;
    std::vector<bool> seen(16, false);
    if (ok) {
      for (const auto& x : elements(b.h_group)) {
        try {
          auto nf = normal_form_in_H(x, b);
          std::size_t slot = nf.l * 2 + nf.eps;
          ok = ok && !seen[slot];
          seen[slot] = true;
        } catch (const DomainError&) {
          ok = false;
        }
      }
    }
    rep.add(checks::kHNormalForm, ok, "every element of H is tau2^l h^eps, uniquely");
  }

  rep.add(checks::kTau2ConjH, conjugate(b.tau2, b.h) == power(b.tau2, 5),
          "tau2^h = " + conjugate(b.tau2, b.h).to_string());

  {
    std::string detail;
    const PermGroup normal(n, {b.rho1, b.rho2});
    bool ok = element_order(b.tau1) == 8 && element_order(b.tau2) == 8;
    ok = ok && compose(b.rho1, b.rho2) == compose(b.rho2, b.rho1);
    ok = ok && normal.order() == kr;
    for (const auto* tau : {&b.tau1, &b.tau2}) {
      for (const auto* rho : {&b.rho1, &b.rho2}) {
        ok = ok && conjugate(*rho, *tau) == inverse(*rho);
      }
    }
    ok = ok && b.r1.order() == 8 * kr && b.r2.order() == 8 * kr;
    detail = "<rho1, rho2> abelian of order kr, inverted by tau1 and tau2";
    if (ok && b.r1.order() <= kAbstractOrderCeiling) {
      auto a1 = to_abstract(b.r1);
      auto a2 = to_abstract(b.r2);
      auto iso = abstract_isomorphism(a1.group, a2.group);
      ok = iso.has_value() && is_isomorphism(a1.group, a2.group, *iso);
      detail += "; abstract isomorphism R1 -> R2 found";
    }
    rep.add(checks::kIsomorphic, ok, detail);
  }

  rep.add(checks::kRegular, is_regular(b.r1) && is_regular(b.r2),
          "|R1| = " + std::to_string(b.r1.order()) + ", |R2| = " + std::to_string(b.r2.order()) +
              ", degree " + std::to_string(n));

  rep.add(checks::kIndexTwo, is_subgroup(b.r1, b.g) && b.g.order() == 2 * b.r1.order(),
          "|G| = " + std::to_string(b.g.order()));
  return rep;
}

void require_bundle(const ConstructionBundle& b) {
  auto rep = verify_bundle(b);
  if (const auto* f = rep.first_failure()) throw VerificationError(f->name, f->detail);
}

void write_bundle(std::ostream& out, const ConstructionBundle& b) {
  out << "# k = " << b.params.k << ", r = " << b.params.r << '\n';
  write_generators(out, b.degree(), {b.tau1, b.tau2, b.rho1, b.rho2, b.h},
                   {"tau1", "tau2", "rho1", "rho2", "h"});
}

}  // namespace dci
