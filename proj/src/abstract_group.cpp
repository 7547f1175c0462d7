#include "dci/abstract_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dci/error.hpp"

namespace dci {

AbstractGroup::AbstractGroup(std::size_t order, std::vector<Elem> table)
    : order_(order), table_(std::move(table)) {
  if (order_ == 0 || table_.size() != order_ * order_) {
    throw DomainError("AbstractGroup: table size does not match order");
  }
  for (Elem v : table_) {
    if (v >= order_) throw DomainError("AbstractGroup: table entry out of range");
  }
  if (!is_latin_square()) throw DomainError("AbstractGroup: table is not a Latin square");
  bool found = false;
  for (Elem e = 0; e < order_ && !found; ++e) {
    bool ok = true;
    for (Elem x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw DomainError("AbstractGroup: no identity element");
  if (order_ <= kAbstractOrderCeiling && !is_associative()) {
    throw DomainError("AbstractGroup: table is not associative");
  }
  inverse_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      if (mul(a, b) == identity_) inverse_[a] = b;
    }
  }
}

Elem AbstractGroup::power(Elem a, std::int64_t e) const {
  Elem base = e < 0 ? inverse(a) : a;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Elem acc = identity_;
  for (std::uint64_t t = 0; t < n; ++t) acc = mul(acc, base);
  return acc;
}

std::uint64_t AbstractGroup::element_order(Elem a) const {
  std::uint64_t m = 1;
  for (Elem x = a; x != identity_; x = mul(x, a)) ++m;
  return m;
}

bool AbstractGroup::is_latin_square() const {
  for (std::size_t a = 0; a < order_; ++a) {
    std::vector<bool> row(order_, false), col(order_, false);
    for (std::size_t b = 0; b < order_; ++b) {
      Elem r = table_[a * order_ + b];
      Elem c = table_[b * order_ + a];
      if (row[r] || col[c]) return false;
      row[r] = col[c] = true;
    }
  }
  return true;
}

bool AbstractGroup::is_associative() const {
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      Elem ab = mul(a, b);
      for (Elem c = 0; c < order_; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    }
  }
  return true;
}

bool AbstractGroup::is_abelian() const {
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = a + 1; b < order_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

Elem EnumeratedGroup::index_of(const Permutation& p) const {
  auto it = index.find(p);
  if (it == index.end()) throw DomainError("index_of: permutation is not a group element");
  return it->second;
}

EnumeratedGroup to_abstract(const PermGroup& g, std::uint64_t cap) {
  EnumeratedGroup out;
  out.elements = elements(g, cap);
  const std::size_t n = out.elements.size();
  for (std::size_t t = 0; t < n; ++t) out.index.emplace(out.elements[t], static_cast<Elem>(t));
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = out.index.at(compose(out.elements[a], out.elements[b]));
    }
  }
  out.group = AbstractGroup(n, std::move(table));
  return out;
}

namespace {

std::vector<bool> closure(const AbstractGroup& g, const std::vector<Elem>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> queue{g.identity()};
  in[g.identity()] = true;
  for (std::size_t t = 0; t < queue.size(); ++t) {
    for (Elem s : gens) {
      Elem y = g.mul(queue[t], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  return in;
}

constexpr Elem kUnset = ~Elem{0};

// Extends the first `count` generator images over the subgroup they
// generate. Fails on inconsistency, or when `injective` is set and two
// elements collide.
bool extend_partial(const AbstractGroup& from, const std::vector<Elem>& gens, const AbstractGroup& to,
                    const std::vector<Elem>& images, std::size_t count, bool injective,
                    GroupMap& map) {
  map.assign(from.order(), kUnset);
  std::vector<bool> used(to.order(), false);
  map[from.identity()] = to.identity();
  used[to.identity()] = true;
  std::vector<Elem> queue{from.identity()};
  for (std::size_t t = 0; t < queue.size(); ++t) {
    Elem x = queue[t];
    for (std::size_t i = 0; i < count; ++i) {
      Elem y = from.mul(x, gens[i]);
      Elem img = to.mul(map[x], images[i]);
      if (map[y] == kUnset) {
        if (injective && used[img]) return false;
        map[y] = img;
        used[img] = true;
        queue.push_back(y);
      } else if (map[y] != img) {
        return false;
      }
    }
  }
  return true;
}

void check_ceiling(const AbstractGroup& g) {
  if (g.order() > kAbstractOrderCeiling) {
    throw CapacityError("abstract group order " + std::to_string(g.order()) + " exceeds ceiling " +
                        std::to_string(kAbstractOrderCeiling));
  }
}

std::vector<std::uint64_t> order_profile(const AbstractGroup& g) {
  std::vector<std::uint64_t> p;
  for (Elem a = 0; a < g.order(); ++a) p.push_back(g.element_order(a));
  std::sort(p.begin(), p.end());
  return p;
}

// Calls `found` for every injective homomorphism from -> to that is
// determined by generating_set(from); stops when `found` returns false.
template <class F>
void search_isomorphisms(const AbstractGroup& from, const AbstractGroup& to, F&& found) {
  const auto gens = generating_set(from);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto m = from.element_order(gens[i]);
    for (Elem c = 0; c < to.order(); ++c) {
      if (to.element_order(c) == m) candidates[i].push_back(c);
    }
  }
  std::vector<Elem> images(gens.size());
  GroupMap map;
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) return found(map);
    for (Elem c : candidates[depth]) {
      images[depth] = c;
      if (!extend_partial(from, gens, to, images, depth + 1, true, map)) continue;
      if (!self(self, depth + 1)) return false;
    }
    return true;
  };
  if (gens.empty()) {
    map.assign(1, to.identity());
    found(map);
    return;
  }
  dfs(dfs, 0);
}

}  // namespace

std::vector<Elem> generating_set(const AbstractGroup& g) {
  std::vector<Elem> order(g.order());
  std::iota(order.begin(), order.end(), Elem{0});
  std::vector<std::uint64_t> ord(g.order());
  for (Elem a = 0; a < g.order(); ++a) ord[a] = g.element_order(a);
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  std::vector<bool> in = closure(g, gens);
  for (Elem a : order) {
    if (in[a]) continue;
    gens.push_back(a);
    in = closure(g, gens);
  }
  return gens;
}

std::optional<GroupMap> extend_homomorphism(const AbstractGroup& from, const std::vector<Elem>& gens,
                                            const AbstractGroup& to, const std::vector<Elem>& images) {
  if (gens.size() != images.size()) throw DomainError("extend_homomorphism: size mismatch");
  GroupMap map;
  if (!extend_partial(from, gens, to, images, gens.size(), false, map)) return std::nullopt;
  if (std::find(map.begin(), map.end(), kUnset) != map.end()) return std::nullopt;
  return map;
}

bool is_isomorphism(const AbstractGroup& from, const AbstractGroup& to, const GroupMap& map) {
  if (from.order() != to.order() || map.size() != from.order()) return false;
  std::vector<Point> img(map.begin(), map.end());
  if (!is_bijection(img)) return false;
  for (Elem a = 0; a < from.order(); ++a) {
    for (Elem b = 0; b < from.order(); ++b) {
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
    }
  }
  return true;
}

std::optional<GroupMap> abstract_isomorphism(const AbstractGroup& g1, const AbstractGroup& g2) {
  check_ceiling(g1);
  check_ceiling(g2);
  if (g1.order() != g2.order() || order_profile(g1) != order_profile(g2)) return std::nullopt;
  std::optional<GroupMap> result;
  search_isomorphisms(g1, g2, [&](const GroupMap& m) {
    result = m;
    return false;
  });
  return result;
}

std::vector<GroupMap> abstract_automorphisms(const AbstractGroup& g) {
  check_ceiling(g);
  std::vector<GroupMap> out;
  search_isomorphisms(g, g, [&](const GroupMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

PermGroup regular_representation(const AbstractGroup& g) {
  std::vector<Permutation> gens;
  for (Elem s : generating_set(g)) {
    std::vector<Point> img(g.order());
    for (Elem x = 0; x < g.order(); ++x) img[x] = g.mul(x, s);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(g.order(), std::move(gens));
}

Permutation as_permutation(const GroupMap& map) {
  return Permutation(std::vector<Point>(map.begin(), map.end()));
}

AbstractGroup cyclic_group(std::size_t n) {
  if (n == 0) throw DomainError("cyclic_group: order must be positive");
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  return AbstractGroup(n, std::move(t));
}

AbstractGroup direct_product(const AbstractGroup& a, const AbstractGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Elem first = a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb));
      Elem second = b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb));
      t[x * n + y] = static_cast<Elem>(first * nb + second);
    }
  }
  return AbstractGroup(n, std::move(t));
}

AbstractGroup cyclic_semidirect(std::size_t m, std::size_t n, std::size_t a) {
  std::size_t an = 1;
  for (std::size_t t = 0; t < n; ++t) an = an * a % m;
  if (an != 1 % m) throw DomainError("cyclic_semidirect: a^n must be 1 mod m");
  std::vector<std::size_t> apow(n, 1 % m);
  for (std::size_t t = 1; t < n; ++t) apow[t] = apow[t - 1] * a % m;
  // Index y * m + x stands for d^y c^x, and
  // d^y1 c^x1 d^y2 c^x2 = d^(y1+y2) c^(a^y2 x1 + x2).
  const std::size_t order = m * n;
  std::vector<Elem> t(order * order);
  for (std::size_t p = 0; p < order; ++p) {
    for (std::size_t q = 0; q < order; ++q) {
      std::size_t x1 = p % m, y1 = p / m, x2 = q % m, y2 = q / m;
      std::size_t x = (apow[y2] * x1 + x2) % m;
      std::size_t y = (y1 + y2) % n;
      t[p * order + q] = static_cast<Elem>(y * m + x);
    }
  }
  return AbstractGroup(order, std::move(t));
}

AbstractGroup dicyclic_group(std::size_t m) {
  if (m < 1) throw DomainError("dicyclic_group: m must be positive");
  // Elements x^i y^e, i in Z_2m, e in {0,1}; y x = x^-1 y, y^2 = x^m.
  const std::size_t two_m = 2 * m, order = 4 * m;
  std::vector<Elem> t(order * order);
  for (std::size_t p = 0; p < order; ++p) {
    for (std::size_t q = 0; q < order; ++q) {
      std::size_t i1 = p % two_m, e1 = p / two_m, i2 = q % two_m, e2 = q / two_m;
      std::size_t i = (e1 ? i1 + two_m - i2 : i1 + i2) % two_m;
      std::size_t e = e1 ^ e2;
      if (e1 && e2) i = (i + m) % two_m;
      t[p * order + q] = static_cast<Elem>(e * two_m + i);
    }
  }
  return AbstractGroup(order, std::move(t));
}

namespace {

AbstractGroup alternating4() {
  PermGroup a4(4, {from_cycles({{0, 1, 2}}, 4), from_cycles({{0, 1}, {2, 3}}, 4)});
  return to_abstract(a4).group;
}

AbstractGroup dihedral(std::size_t n) { return cyclic_semidirect(n, 2, n - 1); }

}  // namespace

std::vector<NamedGroup> small_group_table() {
  std::vector<NamedGroup> t;
  for (std::size_t n = 1; n <= 16; ++n) t.push_back({"c" + std::to_string(n), cyclic_group(n)});
  auto c = [](std::size_t n) { return cyclic_group(n); };
  t.push_back({"c2xc2", direct_product(c(2), c(2))});
  t.push_back({"s3", dihedral(3)});
  t.push_back({"c2xc4", direct_product(c(2), c(4))});
  t.push_back({"c2xc2xc2", direct_product(direct_product(c(2), c(2)), c(2))});
  t.push_back({"d4", dihedral(4)});
  t.push_back({"q8", dicyclic_group(2)});
  t.push_back({"c3xc3", direct_product(c(3), c(3))});
  t.push_back({"d5", dihedral(5)});
  t.push_back({"c2xc6", direct_product(c(2), c(6))});
  t.push_back({"d6", dihedral(6)});
  t.push_back({"dic3", dicyclic_group(3)});
  t.push_back({"a4", alternating4()});
  t.push_back({"d7", dihedral(7)});
  t.push_back({"c4xc4", direct_product(c(4), c(4))});
  t.push_back({"c2xc8", direct_product(c(2), c(8))});
  t.push_back({"c2xc2xc4", direct_product(direct_product(c(2), c(2)), c(4))});
  t.push_back({"c2xc2xc2xc2", direct_product(direct_product(c(2), c(2)), direct_product(c(2), c(2)))});
  t.push_back({"d8", dihedral(8)});
  t.push_back({"sd16", cyclic_semidirect(8, 2, 3)});
  t.push_back({"m16", cyclic_semidirect(8, 2, 5)});
  t.push_back({"q16", dicyclic_group(4)});
  t.push_back({"c4:c4", cyclic_semidirect(4, 4, 3)});
  t.push_back({"c2xd4", direct_product(c(2), dihedral(4))});
  t.push_back({"c2xq8", direct_product(c(2), dicyclic_group(2))});
  return t;
}

std::optional<AbstractGroup> group_by_name(const std::string& name) {
  std::optional<AbstractGroup> acc;
  std::stringstream ss(name);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    std::optional<AbstractGroup> factor;
    auto number = [&](std::size_t skip) -> std::size_t {
      if (tok.size() <= skip) return 0;
      std::size_t v = 0;
      for (std::size_t t = skip; t < tok.size(); ++t) {
        if (tok[t] < '0' || tok[t] > '9' || v > 1000) return 0;
        v = v * 10 + static_cast<std::size_t>(tok[t] - '0');
      }
      return v;
    };
    if (tok == "q8") {
      factor = dicyclic_group(2);
    } else if (tok == "q16") {
      factor = dicyclic_group(4);
    } else if (tok == "a4") {
      factor = alternating4();
    } else if (tok == "s3") {
      factor = dihedral(3);
    } else if (tok.starts_with("dic") && number(3) > 0) {
      factor = dicyclic_group(number(3));
    } else if (tok.starts_with("c") && number(1) > 0) {
      factor = cyclic_group(number(1));
    } else if (tok.starts_with("d") && number(1) >= 3) {
      factor = dihedral(number(1));
    } else {
      return std::nullopt;
    }
    acc = acc ? direct_product(*acc, *factor) : *factor;
  }
  return acc;
}

}  // namespace dci
