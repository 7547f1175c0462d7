#include "dci/dci.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>

#include "dci/error.hpp"

namespace dci {

ArcSet cayley_arcs(const CayleySpec& spec) {
  const auto& g = spec.group;
  std::vector<std::pair<Point, Point>> arcs;
  for (Elem s : spec.connection) {
    if (s >= g.order()) throw DomainError("cayley_arcs: element out of range");
    if (s == g.identity()) throw DomainError("cayley_arcs: identity in connection set");
    for (Elem a = 0; a < g.order(); ++a) arcs.emplace_back(a, g.mul(s, a));
  }
  return ArcSet(g.order(), std::move(arcs));
}

RegularEmbedding embed_regular(const PermGroup& r, Point base) {
  if (!is_regular(r)) throw DomainError("embed_regular: group is not regular");
  const std::size_t n = r.degree();
  if (base >= n) throw DomainError("embed_regular: base point out of range");
  std::vector<Permutation> at(n);
  for (auto& t : elements(r)) {
    Point x = t(base);
    at[x] = std::move(t);
  }
  std::vector<Elem> table(n * n);
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) table[x * n + y] = at[y](x);
  }
  // t_base is the identity, so `base` is the identity label.
  AbstractGroup group(n, std::move(table));
  return RegularEmbedding{r, base, std::move(at), std::move(group)};
}

std::vector<Elem> connection_set(const RegularEmbedding& e, const ArcSet& arcs) {
  if (arcs.degree() != e.subgroup.degree()) throw DomainError("connection_set: degree mismatch");
  auto out = arcs.out_neighbors(e.base);
  return {out.begin(), out.end()};
}

std::vector<PermGroup> find_regular_subgroups(const PermGroup& g, std::uint64_t cap) {
  if (!is_transitive(g)) throw DomainError("find_regular_subgroups: group is not transitive");
  const std::size_t n = g.degree();
  const auto elems = elements(g, cap);
  std::vector<std::vector<const Permutation*>> sending(n);
  for (const auto& x : elems) sending[x(0)].push_back(&x);

  std::vector<PermGroup> found;
  // by_image[x] is the element of the current subgroup sending 0 to x.
  using Partial = std::vector<std::optional<Permutation>>;

  // Closure of the subgroup generated by `gens`, or nullopt once two
  // elements agree on point 0 (non-trivial stabilizer) or the size
  // exceeds n.
  auto close = [&](const std::vector<Permutation>& gens) -> std::optional<Partial> {
    Partial by_image(n);
    std::vector<Permutation> queue{Permutation::identity(n)};
    by_image[0] = queue.front();
    for (std::size_t t = 0; t < queue.size(); ++t) {
      for (const auto& s : gens) {
        Permutation y = compose(queue[t], s);
        Point img = y(0);
        if (by_image[img]) {
          if (*by_image[img] != y) return std::nullopt;
          continue;
        }
        by_image[img] = y;
        queue.push_back(std::move(y));
      }
    }
    if (n % queue.size() != 0) return std::nullopt;
    return by_image;
  };

  std::vector<Permutation> gens;
  auto dfs = [&](auto&& self, const Partial& current) -> void {
    auto gap = std::find_if(current.begin(), current.end(), [](const auto& e) { return !e; });
    if (gap == current.end()) {
      found.emplace_back(n, gens);
      return;
    }
    const auto x = static_cast<Point>(gap - current.begin());
    for (const Permutation* cand : sending[x]) {
      gens.push_back(*cand);
      if (auto next = close(gens)) self(self, *next);
      gens.pop_back();
    }
  };
  dfs(dfs, *close({}));
  return found;
}

std::vector<ConjugacyClass> classify_conjugacy(const PermGroup& g, const std::vector<PermGroup>& subs,
                                               std::uint64_t cap) {
  std::vector<ConjugacyClass> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      if (auto x = are_conjugate_subgroups(g, subs[cls.members.front()], subs[i], cap)) {
        cls.members.push_back(i);
        cls.conjugators.push_back(std::move(*x));
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({{i}, {Permutation::identity(g.degree())}});
  }
  return classes;
}

namespace {

// R2 labels -> R1 labels induced by tau2 -> tau1, rho1 -> rho1, rho2 -> rho2.
GroupMap label_transfer(const RegularEmbedding& e2, const RegularEmbedding& e1, const ConstructionBundle& b) {
  auto phi = extend_homomorphism(e2.group, {b.tau2(0), b.rho1(0), b.rho2(0)}, e1.group,
                                 {b.tau1(0), b.rho1(0), b.rho2(0)});
  if (!phi || !is_bijection(std::vector<Point>(phi->begin(), phi->end()))) {
    throw VerificationError("label_transfer", "tau2 -> tau1 does not extend to an isomorphism R2 -> R1");
  }
  return *phi;
}

std::vector<Elem> mapped_sorted(const std::vector<Elem>& set, const GroupMap& phi) {
  std::vector<Elem> out;
  for (Elem x : set) out.push_back(phi[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> combinations(std::size_t m, std::size_t size) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> c(size);
  std::iota(c.begin(), c.end(), 0U);
  while (true) {
    out.push_back(c);
    std::size_t i = size;
    while (i > 0 && c[i - 1] == m - size + i - 1) --i;
    if (i == 0) return out;
    ++c[i - 1];
    for (std::size_t t = i; t < size; ++t) c[t] = c[t - 1] + 1;
  }
}

struct WitnessContext {
  OrbitalColoring coloring;
  std::vector<std::uint32_t> off;
  PermGroup g;
  RegularEmbedding e1, e2;
  GroupMap phi;
};

WitnessContext witness_context(const ConstructionBundle& b) {
  auto coloring = orbital_coloring(b.g);
  auto off = coloring.off_diagonal_colors();
  auto e1 = embed_regular(b.r1);
  auto e2 = embed_regular(b.r2);
  auto phi = label_transfer(e2, e1, b);
  return {std::move(coloring), std::move(off), b.g, std::move(e1), std::move(e2), std::move(phi)};
}

std::set<std::uint32_t> pick(const WitnessContext& ctx, const std::vector<std::uint32_t>& combo) {
  std::set<std::uint32_t> colors;
  for (auto t : combo) colors.insert(ctx.off[t]);
  return colors;
}

// G always preserves a union of its orbitals, so Aut(U) = G iff Aut(U) <= G.
bool is_witness(const WitnessContext& ctx, const std::vector<std::uint32_t>& combo, SearchBudget budget) {
  return is_subgroup(digraph_automorphisms(arcs_of_colors(ctx.coloring, pick(ctx, combo)), budget), ctx.g);
}

WitnessResult digraph_result(const WitnessContext& ctx, const std::vector<std::uint32_t>& combo) {
  WitnessResult w;
  auto colors = pick(ctx, combo);
  w.colors.assign(colors.begin(), colors.end());
  ArcSet u = arcs_of_colors(ctx.coloring, colors);
  w.s_sets.push_back(connection_set(ctx.e1, u));
  w.t_sets.push_back(mapped_sorted(connection_set(ctx.e2, u), ctx.phi));
  w.iso = as_permutation(ctx.phi);
  return w;
}

WitnessResult colored_result(const WitnessContext& ctx) {
  WitnessResult w;
  w.fallback = true;
  w.colors = ctx.off;
  for (auto c : ctx.off) {
    ArcSet u = arcs_of_colors(ctx.coloring, {c});
    w.s_sets.push_back(connection_set(ctx.e1, u));
    w.t_sets.push_back(mapped_sorted(connection_set(ctx.e2, u), ctx.phi));
  }
  w.iso = as_permutation(ctx.phi);
  return w;
}

}  // namespace

WitnessResult witness_digraphs(const ConstructionBundle& b, const RefutationOptions& opt) {
  const auto ctx = witness_context(b);
  const std::size_t m = ctx.off.size();
  std::uint64_t examined = 0;
  for (std::size_t size = 1; size <= m; ++size) {
    const auto combos = combinations(m, size);
    if (examined + combos.size() > opt.witness_subset_cap) break;
    examined += combos.size();
    const auto count = static_cast<std::int64_t>(combos.size());
    std::int64_t first = count;
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first)
    for (std::int64_t t = 0; t < count; ++t) {
      if (t > first) continue;
      try {
        if (is_witness(ctx, combos[t], opt.budget)) first = t;
      } catch (...) {
#pragma omp critical(witness_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    if (first < count) return digraph_result(ctx, combos[first]);
  }
  return colored_result(ctx);
}

namespace serial {

WitnessResult witness_digraphs(const ConstructionBundle& b, const RefutationOptions& opt) {
  const auto ctx = witness_context(b);
  const std::size_t m = ctx.off.size();
  std::uint64_t examined = 0;
  for (std::size_t size = 1; size <= m; ++size) {
    const auto combos = combinations(m, size);
    if (examined + combos.size() > opt.witness_subset_cap) break;
    examined += combos.size();
    for (const auto& combo : combos) {
      if (is_witness(ctx, combo, opt.budget)) return digraph_result(ctx, combo);
    }
  }
  return colored_result(ctx);
}

}  // namespace serial

DciCertificate babai_refutation(const ConstructionParams& params, const RefutationOptions& opt,
                                RefutationStats* stats) {
  validate(params, kPipelineDegreeCeiling);
  const ConstructionBundle b = build(params, opt.seed);
  DciCertificate cert;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    cert.checks.emplace_back(name, ok);
    if (!ok) throw VerificationError(name, detail);
  };

  for (const auto& c : verify_bundle(b).checks) record(c.name, c.passed, c.detail);

  const PermGroup closure = two_closure(b.g, opt.budget);
  record("g_two_closed", same_group(closure, b.g),
         "|G^(2)| = " + std::to_string(closure.order()) + ", |G| = " + std::to_string(b.g.order()));
  if (b.degree() <= kBruteDegreeCeiling) {
    record("two_closure_matches_brute", brute_two_closure(b.g).order() == closure.order(),
           "brute-force closure order differs");
  }

  record("r1_r2_not_conjugate", !are_conjugate_subgroups(b.g, b.r2, b.r1, opt.element_cap).has_value(),
         "found g in G with R2^g = R1");

  const auto regular = find_regular_subgroups(b.g, opt.element_cap);
  const auto r_table = to_abstract(b.r1).group;
  std::vector<PermGroup> copies;
  for (const auto& sub : regular) {
    if (abstract_isomorphism(to_abstract(sub).group, r_table)) copies.push_back(sub);
  }
  const auto classes = classify_conjugacy(b.g, copies, opt.element_cap);
  if (stats) *stats = {regular.size(), copies.size(), classes.size()};
  record("regular_classes_at_least_2", classes.size() >= 2,
         std::to_string(classes.size()) + " conjugacy classes of regular copies of R");

  WitnessResult w = witness_digraphs(b, opt);
  cert.params = params;
  cert.degree = b.degree();
  cert.tau1 = b.tau1;
  cert.tau2 = b.tau2;
  cert.rho1 = b.rho1;
  cert.rho2 = b.rho2;
  cert.witness_kind = w.fallback ? "colored" : "digraph";
  cert.colors = std::move(w.colors);
  cert.s_sets = std::move(w.s_sets);
  cert.t_sets = std::move(w.t_sets);
  cert.iso = std::move(w.iso);
  cert.aut_count = abstract_automorphisms(embed_regular(b.r1).group).size();

  auto outcome = verify_certificate(cert);
  if (!outcome.ok) throw VerificationError("certificate:" + outcome.failed_check, "self-check failed");
  return cert;
}

VerifyOutcome verify_certificate(const DciCertificate& c) {
  VerifyOutcome out;
  auto fail = [&](const std::string& name, const std::string& why) {
    out.ok = false;
    out.failed_check = name;
    out.log.push_back("FAIL " + name + ": " + why);
    return out;
  };
  auto pass = [&](const std::string& name) { out.log.push_back("ok   " + name); };

  try {
    validate(c.params, kPipelineDegreeCeiling);
  } catch (const DomainError& e) {
    return fail("params", e.what());
  }
  const std::size_t n = c.degree;
  if (n != c.params.degree()) return fail("degree", "degree is not 8kr");
  for (const auto* p : {&c.tau1, &c.tau2, &c.rho1, &c.rho2, &c.iso}) {
    if (p->degree() != n) return fail("degree", "permutation of wrong degree");
  }
  pass("degree");

  {
    auto b = build(c.params);
    if (b.tau1 != c.tau1 || b.tau2 != c.tau2 || b.rho1 != c.rho1 || b.rho2 != c.rho2) {
      return fail("generators_match_construction", "generators differ from the construction for (k, r)");
    }
  }
  pass("generators_match_construction");

  if (c.checks.empty()) return fail("pipeline_checks", "no pipeline checks recorded");
  for (const auto& [name, ok] : c.checks) {
    if (!ok) return fail("pipeline_checks", "pipeline check '" + name + "' is false");
  }
  pass("pipeline_checks");

  const PermGroup r(n, {c.tau1, c.rho1, c.rho2});
  if (!is_regular(r)) return fail("r_regular", "<tau1, rho1, rho2> is not regular");
  pass("r_regular");
  const RegularEmbedding e = embed_regular(r);
  if (!e.group.is_latin_square() || !e.group.is_associative()) {
    return fail("group_table", "multiplication table is not a group");
  }
  pass("group_table");

  if (c.witness_kind != "digraph" && c.witness_kind != "colored") {
    return fail("witness_shape", "unknown witness kind '" + c.witness_kind + "'");
  }
  const std::size_t sets = c.witness_kind == "digraph" ? 1 : c.colors.size();
  if (c.s_sets.size() != sets || c.t_sets.size() != sets || sets == 0) {
    return fail("witness_shape", "wrong number of connection sets");
  }
  for (const auto* family : {&c.s_sets, &c.t_sets}) {
    for (const auto& set : *family) {
      if (!std::is_sorted(set.begin(), set.end()) ||
          std::adjacent_find(set.begin(), set.end()) != set.end()) {
        return fail("witness_shape", "connection set not strictly increasing");
      }
      if (!set.empty() && set.back() >= n) return fail("witness_shape", "element out of range");
      if (!set.empty() && set.front() == e.group.identity()) {
        return fail("identity_free", "identity in a connection set");
      }
    }
  }
  pass("witness_shape");
  pass("identity_free");

  for (std::size_t t = 0; t < sets; ++t) {
    if (c.s_sets[t].size() != c.t_sets[t].size()) return fail("equal_sizes", "|S| != |T|");
  }
  pass("equal_sizes");

  for (std::size_t t = 0; t < sets; ++t) {
    auto cs = cayley_arcs({e.group, c.s_sets[t]});
    auto ct = cayley_arcs({e.group, c.t_sets[t]});
    if (image(cs, c.iso) != ct) return fail("iso_is_isomorphism", "iso does not map Cay(R,S) onto Cay(R,T)");
  }
  pass("iso_is_isomorphism");

  const auto auts = abstract_automorphisms(e.group);
  if (auts.size() != c.aut_count) {
    return fail("aut_exhausted", "enumerated " + std::to_string(auts.size()) + " automorphisms, certificate says " +
                                     std::to_string(c.aut_count));
  }
  pass("aut_exhausted");

  for (const auto& alpha : auts) {
    bool all = true;
    for (std::size_t t = 0; t < sets && all; ++t) all = mapped_sorted(c.s_sets[t], alpha) == c.t_sets[t];
    if (all) return fail("no_automorphism_maps_s_to_t", "an automorphism of R maps S onto T");
  }
  pass("no_automorphism_maps_s_to_t");

  out.ok = true;
  return out;
}

ArcSet witness_arcs(const DciCertificate& c) {
  if (c.witness_kind != "digraph" || c.s_sets.size() != 1) {
    throw DomainError("witness_arcs: certificate has no single-digraph witness");
  }
  const PermGroup r(c.degree, {c.tau1, c.rho1, c.rho2});
  return cayley_arcs({embed_regular(r).group, c.s_sets.front()});
}

namespace {

using Mask = std::uint32_t;

std::vector<Elem> mask_elements(Mask m) {
  std::vector<Elem> out;
  for (Elem x = 0; m >> x; ++x) {
    if ((m >> x) & 1U) out.push_back(x);
  }
  return out;
}

Mask image_mask(Mask m, const GroupMap& alpha) {
  Mask out = 0;
  for (Elem x = 0; m >> x; ++x) {
    if ((m >> x) & 1U) out |= Mask{1} << alpha[x];
  }
  return out;
}

struct BruteEntry {
  std::vector<std::uint32_t> canon;
  Mask orbit_rep = 0;
};

BruteEntry brute_entry(const AbstractGroup& r, const std::vector<GroupMap>& auts, Mask m) {
  BruteEntry e;
  e.canon = canonical_form(cayley_arcs({r, mask_elements(m)}));
  e.orbit_rep = m;
  for (const auto& alpha : auts) e.orbit_rep = std::min(e.orbit_rep, image_mask(m, alpha));
  return e;
}

std::vector<Mask> brute_masks(const AbstractGroup& r, std::size_t size_cap) {
  if (r.order() > kBruteDegreeCeiling) {
    throw CapacityError("dci_brute: group order above " + std::to_string(kBruteDegreeCeiling));
  }
  const Mask id_bit = Mask{1} << r.identity();
  std::vector<Mask> masks;
  for (Mask m = 0; m < (Mask{1} << r.order()); ++m) {
    if (!(m & id_bit) && static_cast<std::size_t>(__builtin_popcount(m)) <= size_cap) masks.push_back(m);
  }
  return masks;
}

std::vector<ViolatingPair> collect_violations(const std::vector<BruteEntry>& entries) {
  std::map<std::vector<std::uint32_t>, std::set<Mask>> classes;
  for (const auto& e : entries) classes[e.canon].insert(e.orbit_rep);
  std::vector<std::pair<Mask, Mask>> pairs;
  for (const auto& [canon, reps] : classes) {
    for (auto it = std::next(reps.begin()); it != reps.end(); ++it) pairs.emplace_back(*reps.begin(), *it);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<ViolatingPair> out;
  for (auto [s, t] : pairs) out.push_back({mask_elements(s), mask_elements(t)});
  return out;
}

}  // namespace

std::vector<ViolatingPair> dci_brute(const AbstractGroup& r, std::size_t size_cap) {
  const auto masks = brute_masks(r, size_cap);
  const auto auts = abstract_automorphisms(r);
  std::vector<BruteEntry> entries(masks.size());
  const auto count = static_cast<std::int64_t>(masks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < count; ++t) entries[t] = brute_entry(r, auts, masks[t]);
  return collect_violations(entries);
}

namespace serial {

std::vector<ViolatingPair> dci_brute(const AbstractGroup& r, std::size_t size_cap) {
  const auto masks = brute_masks(r, size_cap);
  const auto auts = abstract_automorphisms(r);
  std::vector<BruteEntry> entries;
  for (Mask m : masks) entries.push_back(brute_entry(r, auts, m));
  return collect_violations(entries);
}

}  // namespace serial

Report cross_validate(const DciCertificate& c) {
  if (c.params != ConstructionParams{1, 1}) {
    throw DomainError("cross_validate: only k = 1, r = 1 is in range of the brute-force oracle");
  }
  Report rep;
  auto outcome = verify_certificate(c);
  rep.add("certificate_verifies", outcome.ok, outcome.failed_check);
  const bool digraph = c.witness_kind == "digraph" && c.s_sets.size() == 1 && c.t_sets.size() == 1;
  rep.add("digraph_witness", digraph, c.witness_kind);
  if (!outcome.ok || !digraph) return rep;

  const auto c8 = cyclic_group(8);
  const auto e = embed_regular(PermGroup(8, {c.tau1, c.rho1, c.rho2}));
  rep.add("labels_match_c8", e.group.table() == c8.table(), "R1 labels multiply as Z_8");

  const auto auts = abstract_automorphisms(c8);
  auto rep_of = [&](const std::vector<Elem>& set) {
    Mask m = 0;
    for (Elem x : set) m |= Mask{1} << x;
    Mask best = m;
    for (const auto& alpha : auts) best = std::min(best, image_mask(m, alpha));
    return best;
  };
  const Mask s = rep_of(c.s_sets.front());
  const Mask t = rep_of(c.t_sets.front());

  // Violating pairs link orbit representatives within one isomorphism
  // class; S and T must land in the same class as distinct orbits.
  std::map<Mask, Mask> parent;
  auto find = [&](Mask x) {
    while (parent.count(x) && parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& v : dci_brute(c8)) {
    Mask a = 0, b = 0;
    for (Elem x : v.s) a |= Mask{1} << x;
    for (Elem x : v.t) b |= Mask{1} << x;
    parent.try_emplace(a, a);
    parent.try_emplace(b, b);
    parent[find(b)] = find(a);
  }
  const bool linked = s != t && parent.count(s) && parent.count(t) && find(s) == find(t);
  rep.add("pair_in_brute_violations", linked, "S and T are inequivalent members of one violating class");
  return rep;
}

}  // namespace dci
