#include "dci/group.hpp"

#include <algorithm>
#include <numeric>

#include "dci/error.hpp"

namespace dci {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::uint64_t seed)
    : degree_(degree),
      generators_(std::move(generators)),
      seed_(seed),
      lazy_(std::make_shared<Lazy>()) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) throw DomainError("PermGroup: generator degree mismatch");
  }
}

const StabilizerChain& PermGroup::chain() const {
  std::call_once(lazy_->once, [this] {
    lazy_->chain.emplace(StabilizerChain::build(degree_, generators_, seed_));
  });
  return *lazy_->chain;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw DomainError("contains: degree mismatch");
  return chain().contains(p);
}

StabilizerChain schreier_sims(std::span<const Permutation> gens, std::uint64_t seed) {
  if (gens.empty()) throw DomainError("schreier_sims: empty generator list");
  return StabilizerChain::build(gens.front().degree(), gens, seed);
}

std::uint64_t group_order(const PermGroup& g) { return g.order(); }

bool contains(const PermGroup& g, const Permutation& p) { return g.contains(p); }

std::vector<Permutation> elements(const PermGroup& g, std::uint64_t cap) {
  std::uint64_t n = g.order();
  if (n > cap) {
    throw CapacityError("elements: group order " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<Permutation> out;
  out.reserve(n);
  g.chain().for_each_element([&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<std::vector<Point>> orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : g.generators()) {
    for (Point x = 0; x < n; ++x) {
      Point a = find(x), b = find(s(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Point>> out;
  std::vector<int> slot(n, -1);
  for (Point x = 0; x < n; ++x) {
    Point root = find(x);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(x);
  }
  return out;
}

bool is_transitive(const PermGroup& g) { return g.degree() > 0 && orbits(g).size() == 1; }

bool is_regular(const PermGroup& g) { return is_transitive(g) && g.order() == g.degree(); }

std::vector<Permutation> elements_of_order(const PermGroup& g, std::uint64_t m, std::uint64_t cap) {
  std::vector<Permutation> out;
  for (auto& p : elements(g, cap)) {
    if (element_order(p) == m) out.push_back(std::move(p));
  }
  return out;
}

bool is_subgroup(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) return false;
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&](const Permutation& p) { return b.contains(p); });
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b);
}

PermGroup generated_by_filtered(std::size_t degree, const std::vector<Permutation>& elements) {
  std::vector<Permutation> kept;
  PermGroup current = PermGroup::trivial(degree);
  for (const auto& p : elements) {
    if (current.contains(p)) continue;
    kept.push_back(p);
    current = PermGroup(degree, kept);
  }
  return current;
}

namespace {

void check_conjugacy_args(const PermGroup& g, const PermGroup& a, const PermGroup& b) {
  if (!is_subgroup(a, g) || !is_subgroup(b, g)) {
    throw DomainError("are_conjugate_subgroups: arguments must be subgroups of G");
  }
}

bool conjugates_into(const Permutation& x, const PermGroup& a, const PermGroup& b) {
  for (const auto& s : a.generators()) {
    if (!b.contains(conjugate(s, x))) return false;
  }
  return true;
}

}  // namespace

std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& a,
                                                   const PermGroup& b, std::uint64_t cap) {
  check_conjugacy_args(g, a, b);
  if (a.order() != b.order()) return std::nullopt;
  const auto elems = elements(g, cap);
  const auto count = static_cast<std::int64_t>(elems.size());
  std::int64_t first = count;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
  for (std::int64_t t = 0; t < count; ++t) {
    if (t < first && conjugates_into(elems[t], a, b)) first = t;
  }
  if (first == count) return std::nullopt;
  return elems[first];
}

namespace serial {

std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& a,
                                                   const PermGroup& b, std::uint64_t cap) {
  check_conjugacy_args(g, a, b);
  if (a.order() != b.order()) return std::nullopt;
  for (const auto& x : elements(g, cap)) {
    if (conjugates_into(x, a, b)) return x;
  }
  return std::nullopt;
}

}  // namespace serial

}  // namespace dci
