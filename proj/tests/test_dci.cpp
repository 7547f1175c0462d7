#include <doctest.h>

#include <map>

#include "dci/dci.hpp"
#include "dci/error.hpp"
#include "oracles.hpp"

using namespace dci;

namespace {

std::set<oracle::Images> as_set(const std::vector<Permutation>& elems) {
  std::set<oracle::Images> out;
  for (const auto& e : elems) out.emplace(e.images().begin(), e.images().end());
  return out;
}

// Canonical form of Cay(R, S) as the least 64-bit adjacency word over all
// relabelings. Exhaustive; order <= 8.
std::uint64_t brute_canon(const AbstractGroup& g, std::uint32_t mask) {
  const std::size_t n = g.order();
  std::vector<std::pair<Elem, Elem>> arcs;
  for (Elem s = 0; s < n; ++s) {
    if ((mask >> s) & 1U) {
      for (Elem a = 0; a < n; ++a) arcs.emplace_back(a, g.mul(s, a));
    }
  }
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::uint64_t best = UINT64_MAX;
  do {
    std::uint64_t word = 0;
    for (auto [u, v] : arcs) word |= std::uint64_t{1} << (p[u] * n + p[v]);
    best = std::min(best, word);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Number of Aut(R)-orbits beyond the first, summed over isomorphism
// classes of Cayley digraphs; zero iff R is DCI.
std::size_t brute_violation_count(const AbstractGroup& g) {
  std::vector<Elem> p(g.order());
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<Elem>> auts;
  do {
    bool ok = true;
    for (Elem a = 0; a < g.order() && ok; ++a) {
      for (Elem b = 0; b < g.order() && ok; ++b) ok = p[g.mul(a, b)] == g.mul(p[a], p[b]);
    }
    if (ok) auts.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::uint64_t, std::set<std::uint32_t>> orbits_by_class;
  for (std::uint32_t m = 0; m < (1U << g.order()); ++m) {
    if ((m >> g.identity()) & 1U) continue;
    std::uint32_t rep = m;
    for (const auto& a : auts) {
      std::uint32_t img = 0;
      for (Elem x = 0; x < g.order(); ++x) {
        if ((m >> x) & 1U) img |= 1U << a[x];
      }
      rep = std::min(rep, img);
    }
    orbits_by_class[brute_canon(g, m)].insert(rep);
  }
  std::size_t extra = 0;
  for (const auto& [canon, reps] : orbits_by_class) extra += reps.size() - 1;
  return extra;
}

// Regular subgroups of G, by closing every generating triple of elements.
std::set<std::set<oracle::Images>> brute_regular_subgroups(const PermGroup& g) {
  const auto elems = elements(g);
  const std::size_t n = g.degree();
  std::set<std::set<oracle::Images>> out;
  std::vector<oracle::Images> raw;
  for (const auto& e : elems) raw.emplace_back(e.images().begin(), e.images().end());
  for (std::size_t a = 0; a < raw.size(); ++a) {
    for (std::size_t b = a; b < raw.size(); ++b) {
      for (std::size_t c = b; c < raw.size(); ++c) {
        auto sub = oracle::closure(n, {raw[a], raw[b], raw[c]}, n);
        if (sub.size() != n) continue;
        std::set<std::uint32_t> hits;
        for (const auto& s : sub) hits.insert(s[0]);
        if (hits.size() == n) out.insert(std::move(sub));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Cayley arcs follow a -> s*a") {
  const auto s3 = *group_by_name("s3");
  std::vector<Elem> conn;
  for (Elem x = 0; x < 6; ++x) {
    if (s3.element_order(x) == 2) {
      conn.push_back(x);
      break;
    }
  }
  const auto arcs = cayley_arcs({s3, conn});
  CHECK(arcs.size() == 6);
  for (Elem a = 0; a < 6; ++a) CHECK(arcs.has_arc(a, s3.mul(conn[0], a)));
  CHECK_THROWS_AS(cayley_arcs({s3, {s3.identity()}}), DomainError);
}

TEST_CASE("regular embedding labels points by group elements") {
  const auto b = build({3, 1});
  const auto e = embed_regular(b.r1);
  CHECK(e.group.order() == 24);
  CHECK(e.group.identity() == 0);
  for (Point x = 0; x < 24; ++x) {
    CHECK(e.element_at[x](0) == x);
    for (Point y = 0; y < 24; ++y) CHECK(e.group.mul(x, y) == e.element_at[y](x));
  }
  CHECK(abstract_isomorphism(e.group, cyclic_semidirect(3, 8, 2)).has_value());
  CHECK_THROWS_AS(embed_regular(b.g), DomainError);
  const auto arcs = cayley_arcs({e.group, {1, 8}});
  CHECK(connection_set(e, arcs) == std::vector<Elem>{1, 8});
}

TEST_CASE("regular subgroups of G for k = 1, r = 1 match brute force") {
  const auto b = build({1, 1});
  const auto found = find_regular_subgroups(b.g);
  std::set<std::set<oracle::Images>> got;
  for (const auto& s : found) {
    CHECK(is_regular(s));
    got.insert(as_set(elements(s)));
  }
  CHECK(got.size() == found.size());
  CHECK(got == brute_regular_subgroups(b.g));
}

TEST_CASE("conjugacy classes of regular subgroups") {
  for (const ConstructionParams p : {ConstructionParams{1, 1}, ConstructionParams{3, 1}}) {
    const auto b = build(p);
    const auto found = find_regular_subgroups(b.g);
    const auto classes = classify_conjugacy(b.g, found);
    std::size_t members = 0;
    for (const auto& cls : classes) {
      members += cls.members.size();
      const auto& rep = found[cls.members.front()];
      for (std::size_t t = 0; t < cls.members.size(); ++t) {
        const auto& target = found[cls.members[t]];
        for (const auto& x : rep.generators()) CHECK(target.contains(conjugate(x, cls.conjugators[t])));
      }
    }
    CHECK(members == found.size());
    for (std::size_t a = 0; a < classes.size(); ++a) {
      for (std::size_t c = a + 1; c < classes.size(); ++c) {
        CHECK_FALSE(are_conjugate_subgroups(b.g, found[classes[a].members[0]], found[classes[c].members[0]]));
      }
    }
  }
}

TEST_CASE("R1 and R2 are not conjugate in G") {
  for (const ConstructionParams p : {ConstructionParams{1, 1}, ConstructionParams{3, 1}, ConstructionParams{1, 3}}) {
    const auto b = build(p);
    CHECK_FALSE(are_conjugate_subgroups(b.g, b.r2, b.r1).has_value());
    CHECK_FALSE(serial::are_conjugate_subgroups(b.g, b.r2, b.r1).has_value());
    const auto gset = as_set(elements(b.g));
    CHECK_FALSE(oracle::conjugate_sets(gset, as_set(elements(b.r2)), as_set(elements(b.r1))));
    // Positive control: R1 is conjugate to itself by the identity.
    CHECK(are_conjugate_subgroups(b.g, b.r1, b.r1).has_value());
  }
}

TEST_CASE("no order-8 element of R2's Sylow 2-subgroup lies in R1") {
  const auto b = build({1, 1});
  const PermGroup sylow2(8, {b.tau2});
  for (const auto& x : elements_of_order(sylow2, 8)) CHECK_FALSE(b.r1.contains(x));
}

TEST_CASE("brute DCI oracle agrees with an independent exhaustive count") {
  for (const char* name : {"c2", "c3", "c4", "c2xc2", "c5", "c6", "s3", "c7", "c8", "c2xc4", "d4", "q8"}) {
    CAPTURE(name);
    const auto g = *group_by_name(name);
    const auto v = dci_brute(g);
    CHECK(v.size() == brute_violation_count(g));
    CHECK(v.size() == serial::dci_brute(g).size());
  }
}

TEST_CASE("brute DCI verdicts") {
  CHECK(dci_brute(cyclic_group(2)).empty());
  CHECK(dci_brute(cyclic_group(3)).empty());
  CHECK(dci_brute(cyclic_group(5)).empty());
  const auto c8 = dci_brute(cyclic_group(8));
  CHECK_FALSE(c8.empty());
  for (const auto& [s, t] : c8) {
    const auto g = cyclic_group(8);
    CHECK(digraph_isomorphism(cayley_arcs({g, s}), cayley_arcs({g, t})).has_value());
    // Automorphisms of Z_8 are x -> u x for odd u.
    for (std::uint32_t u : {1u, 3u, 5u, 7u}) {
      std::vector<Elem> img;
      for (Elem x : s) img.push_back((u * x) % 8);
      std::sort(img.begin(), img.end());
      CHECK(img != t);
    }
  }
  CHECK(dci_brute(cyclic_group(8)).size() == serial::dci_brute(cyclic_group(8)).size());
  CHECK_THROWS_AS(dci_brute(cyclic_group(9)), CapacityError);
}

TEST_CASE("size cap restricts the connection sets examined") {
  const auto g = cyclic_group(8);
  CHECK(dci_brute(g, 2).empty());
  for (const auto& [s, t] : dci_brute(g, 3)) CHECK(s.size() <= 3);
}

TEST_CASE("parallel witness search equals the serial search") {
  for (const ConstructionParams p : {ConstructionParams{1, 1}, ConstructionParams{3, 1}, ConstructionParams{1, 3}}) {
    const auto b = build(p);
    const auto par = witness_digraphs(b);
    const auto ser = serial::witness_digraphs(b);
    CHECK(par.fallback == ser.fallback);
    CHECK(par.colors == ser.colors);
    CHECK(par.s_sets == ser.s_sets);
    CHECK(par.t_sets == ser.t_sets);
    CHECK(par.iso == ser.iso);
  }
}

TEST_CASE("witness digraph has automorphism group exactly G") {
  const auto b = build({3, 1});
  const auto w = witness_digraphs(b);
  REQUIRE_FALSE(w.fallback);
  const auto e = embed_regular(b.r1);
  const auto arcs = cayley_arcs({e.group, w.s_sets.front()});
  const auto aut = digraph_automorphisms(arcs);
  CHECK(same_group(aut, b.g));
}

TEST_CASE("babai refutation for small parameters") {
  for (const ConstructionParams p : {ConstructionParams{1, 1}, ConstructionParams{3, 1}, ConstructionParams{1, 3}}) {
    CAPTURE(p.k);
    CAPTURE(p.r);
    RefutationStats stats;
    const auto cert = babai_refutation(p, {}, &stats);
    CHECK(verify_certificate(cert).ok);
    CHECK(stats.conjugacy_classes >= 2);
    CHECK(stats.regular_isomorphic_to_r >= 2);
    CHECK(cert.witness_kind == "digraph");
    CHECK(cert.checks.front().first == checks::kHOrder);
    for (const auto& [name, ok] : cert.checks) CHECK(ok);
  }
  CHECK_THROWS_AS(babai_refutation({2, 1}), DomainError);
  CHECK_THROWS_AS(babai_refutation({9, 1}), DomainError);
}

TEST_CASE("cross validation against C_8") {
  const auto cert = babai_refutation({1, 1});
  const auto rep = cross_validate(cert);
  CHECK(rep.checks.size() == 4);
  CHECK(rep.all_passed());
  CHECK_THROWS_AS(cross_validate(babai_refutation({3, 1})), DomainError);
}
