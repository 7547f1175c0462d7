// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "dci/dci.hpp"
#include "oracles.hpp"

using namespace dci;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> body;
};

std::string kr(const ConstructionParams& p) { return "(k=" + std::to_string(p.k) + ", r=" + std::to_string(p.r) + ")"; }

const std::vector<ConstructionParams> kInstances{{1, 1}, {3, 1}, {5, 1}, {1, 3}};

Outcome construction_identities() {
  Outcome o;
  for (const auto& p : kInstances) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = build(p);
    const auto rep = verify_bundle(b);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(rep.checks.size() == 6 && rep.all_passed(), "bundle check failed for " + kr(p));
    o.require(b.h_group.order() == 16, "|H| != 16 for " + kr(p));
    o.require(conjugate(b.tau2, b.h) == power(b.tau2, 5), "tau2^h != tau2^5 for " + kr(p));
    o.require(s < 1.0, "over 1 s for " + kr(p));
  }
  if (o.ok) o.detail = "6/6 checks on 4 instances";
  return o;
}

Outcome non_conjugacy() {
  Outcome o;
  for (const auto& p : kInstances) {
    const auto b = build(p);
    o.require(b.g.order() == 16ULL * p.k * p.r, "|G| wrong for " + kr(p));
    o.require(!are_conjugate_subgroups(b.g, b.r2, b.r1).has_value(), "R2 conjugate to R1 for " + kr(p));
  }
  if (o.ok) o.detail = "no conjugating element in any G";
  return o;
}

Outcome two_closedness() {
  Outcome o;
  for (const auto& p : kInstances) {
    const auto b = build(p);
    const auto t0 = std::chrono::steady_clock::now();
    const auto closure = two_closure(b.g);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(closure.order() == 16ULL * p.k * p.r && same_group(closure, b.g), "G^(2) != G for " + kr(p));
    if (p.degree() == 24) o.require(s < 60.0, "degree 24 closure over 60 s");
  }
  const auto b = build({1, 1});
  const auto t0 = std::chrono::steady_clock::now();
  const auto brute = brute_closure_elements(b.g);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto expected = elements(b.g);
  std::sort(expected.begin(), expected.end());
  o.require(brute == expected, "brute closure over 40320 permutations differs from G");
  o.require(s < 10.0, "brute oracle over 10 s");
  if (o.ok) o.detail = "G^(2) = G for 4 instances; brute scan found exactly the 16 elements";
  return o;
}

Outcome index_two_property() {
  Outcome o;
  std::size_t instances = 0;
  for (const auto& [name, r] : small_group_table()) {
    if (r.order() > 12 || r.order() < 3) continue;
    const auto reg = regular_representation(r);
    for (const auto& sigma : abstract_automorphisms(r)) {
      bool involution = false;
      for (Elem x = 0; x < r.order(); ++x) involution = involution || sigma[x] != x;
      for (Elem x = 0; x < r.order() && involution; ++x) involution = sigma[sigma[x]] == x;
      if (!involution) continue;
      auto gens = reg.generators();
      gens.push_back(as_permutation(sigma));
      const PermGroup g(r.order(), gens);
      o.require(g.order() == 2 * r.order(), name + ": R is not of index 2");
      o.require(same_group(two_closure(g), g), name + ": G^(2) != G");
      ++instances;
    }
  }
  o.require(instances >= 20, "only " + std::to_string(instances) + " instances");
  if (o.ok) o.detail = std::to_string(instances) + " instances, all 2-closed";
  return o;
}

Outcome regular_is_closed() {
  Outcome o;
  const auto table = small_group_table();
  for (const auto& [name, g] : table) {
    const auto rep = regular_representation(g);
    o.require(same_group(two_closure(rep), rep), name + ": regular representation not 2-closed");
  }
  if (o.ok) o.detail = std::to_string(table.size()) + " groups of order <= 16";
  return o;
}

Outcome babai_pipeline() {
  Outcome o;
  for (const ConstructionParams p : {ConstructionParams{1, 1}, ConstructionParams{3, 1}}) {
    RefutationStats stats;
    const auto cert = babai_refutation(p, {}, &stats);
    const auto v = verify_certificate(cert);
    o.require(v.ok, "certificate rejected at " + v.failed_check + " for " + kr(p));
    o.require(stats.conjugacy_classes >= 2, "fewer than 2 classes for " + kr(p));
    if (o.ok) {
      o.detail += (o.detail.empty() ? "" : "; ") + kr(p) + " " + std::to_string(stats.conjugacy_classes) +
                  " classes, |S|=" + std::to_string(cert.s_sets.front().size());
    }
  }
  return o;
}

Outcome c8_cross_check() {
  Outcome o;
  const auto v = dci_brute(cyclic_group(8));
  o.require(!v.empty(), "dci_brute(C8) found no violation");
  const auto rep = cross_validate(babai_refutation({1, 1}));
  o.require(rep.all_passed(), "cross_validate failed");
  for (std::size_t n : {2, 3, 5}) o.require(dci_brute(cyclic_group(n)).empty(), "C" + std::to_string(n) + " not DCI");
  if (o.ok) o.detail = std::to_string(v.size()) + " violating pairs for C8; C2, C3, C5 DCI";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> args{"refute", "--k", "3", "--r", "1", "--seed", "0"};
  std::ostringstream a, b, err;
  o.require(cli::run(args, a, err) == 0, "first refute run failed");
  o.require(cli::run(args, b, err) == 0, "second refute run failed");
  o.require(!a.str().empty() && a.str() == b.str(), "certificates differ");
  if (o.ok) o.detail = std::to_string(a.str().size()) + " identical bytes";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 50) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<oracle::Images> raw;
    std::vector<Permutation> gens;
    for (std::size_t t = 0; t < 1 + rng() % 3; ++t) {
      raw.push_back(oracle::random_perm(n, rng));
      gens.emplace_back(raw.back());
    }
    const auto ref = oracle::closure(n, raw, 2000);
    if (ref.size() > 2000) continue;
    ++done;
    const PermGroup g(n, gens, done);
    o.require(g.order() == ref.size(), "chain order differs from closure on instance " + std::to_string(done));
    const auto closure = two_closure(g);
    o.require(same_group(closure, brute_two_closure(g)), "two_closure differs on instance " + std::to_string(done));
    o.require(closure.order() == oracle::two_closure(n, raw).size(),
              "two_closure differs from the test oracle on instance " + std::to_string(done));
  }
  if (o.ok) o.detail = "50 random groups";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "construction identities", 4.0, construction_identities},
      {2, "R1, R2 not conjugate in G", 5.0, non_conjugacy},
      {3, "G is 2-closed, brute oracle agrees", 70.0, two_closedness},
      {4, "index-2 overgroups of regular groups are 2-closed", 120.0, index_two_property},
      {5, "regular representations are 2-closed", 120.0, regular_is_closed},
      {6, "Babai pipeline certificates verify", 600.0, babai_pipeline},
      {7, "C8 brute-force cross-check", 600.0, c8_cross_check},
      {8, "refute output is deterministic", 60.0, determinism},
      {9, "chain and closure agree with oracles", 300.0, oracle_agreement},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.limit_s) {
      o.ok = false;
      o.detail = "time limit exceeded";
    }
    if (!o.ok) ++failures;
    std::printf("%s  criterion %d: %s [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
