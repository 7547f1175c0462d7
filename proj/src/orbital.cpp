#include "dci/orbital.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dci/error.hpp"
#include "partition_search.hpp"

namespace dci {

namespace {

constexpr std::uint32_t kUncolored = ~std::uint32_t{0};

search::ColorMatrix to_matrix(const OrbitalColoring& c) {
  return {c.degree(), std::vector<std::uint32_t>(c.colors().begin(), c.colors().end())};
}

search::ColorMatrix to_matrix(const ArcSet& a) {
  search::ColorMatrix m{a.degree(), std::vector<std::uint32_t>(a.degree() * a.degree(), 0)};
  for (Point x = 0; x < a.degree(); ++x) m.c[x * a.degree() + x] = 2;
  for (auto [u, v] : a.arcs()) m.c[u * a.degree() + v] = 1;
  return m;
}

void check_search_degree(std::size_t n) {
  if (n > kSearchDegreeCeiling) {
    throw CapacityError("degree " + std::to_string(n) + " exceeds search ceiling " +
                        std::to_string(kSearchDegreeCeiling));
  }
}

PermGroup group_from_search(const search::ColorMatrix& m, SearchBudget budget) {
  check_search_degree(m.n);
  search::NodeCounter nodes(budget.node_cap);
  auto res = search::automorphisms(m, nodes);
  PermGroup g(m.n, std::move(res.generators));
  std::uint64_t expected = 1;
  bool overflow = false;
  for (auto len : res.orbit_lengths) overflow |= __builtin_mul_overflow(expected, len, &expected);
  if (!overflow && g.order() != expected) {
    throw std::logic_error("automorphism search: chain order disagrees with orbit lengths");
  }
  return g;
}

bool preserves_coloring(const OrbitalColoring& c, std::span<const Point> img) {
  const std::size_t n = c.degree();
  for (Point u = 0; u < n; ++u) {
    for (Point v = 0; v < n; ++v) {
      if (c.color(img[u], img[v]) != c.color(u, v)) return false;
    }
  }
  return true;
}

void check_brute_degree(std::size_t n) {
  if (n > kBruteDegreeCeiling) {
    throw CapacityError("brute-force closure limited to degree " + std::to_string(kBruteDegreeCeiling));
  }
}

// Lexicographic rank -> permutation of {0..n-1}.
void unrank(std::uint64_t rank, std::size_t n, std::vector<Point>& out) {
  std::vector<Point> pool(n);
  std::iota(pool.begin(), pool.end(), Point{0});
  std::vector<std::uint64_t> fact(n + 1, 1);
  for (std::size_t t = 1; t <= n; ++t) fact[t] = fact[t - 1] * t;
  out.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::uint64_t f = fact[n - 1 - t];
    std::size_t pick = static_cast<std::size_t>(rank / f);
    rank %= f;
    out[t] = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

}  // namespace

OrbitalColoring::OrbitalColoring(std::size_t degree, std::vector<std::uint32_t> colors,
                                 std::uint32_t num_colors)
    : degree_(degree), colors_(std::move(colors)), num_colors_(num_colors), diagonal_(num_colors, false) {
  if (colors_.size() != degree_ * degree_) throw DomainError("OrbitalColoring: matrix size mismatch");
  for (auto c : colors_) {
    if (c >= num_colors_) throw DomainError("OrbitalColoring: color out of range");
  }
  for (Point x = 0; x < degree_; ++x) diagonal_[color(x, x)] = true;
}

std::vector<std::uint32_t> OrbitalColoring::off_diagonal_colors() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < num_colors_; ++c) {
    if (!diagonal_[c]) out.push_back(c);
  }
  return out;
}

ArcSet::ArcSet(std::size_t degree, std::vector<std::pair<Point, Point>> arcs)
    : degree_(degree), arcs_(std::move(arcs)), adjacency_(degree * degree, false) {
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  for (auto [u, v] : arcs_) {
    if (u >= degree_ || v >= degree_) throw DomainError("ArcSet: endpoint out of range");
    if (u == v) throw DomainError("ArcSet: loops are not allowed");
    adjacency_[u * degree_ + v] = true;
  }
}

std::vector<Point> ArcSet::out_neighbors(Point u) const {
  std::vector<Point> out;
  for (Point v = 0; v < degree_; ++v) {
    if (has_arc(u, v)) out.push_back(v);
  }
  return out;
}

ArcSet image(const ArcSet& a, const Permutation& s) {
  if (s.degree() != a.degree()) throw DomainError("image: degree mismatch");
  std::vector<std::pair<Point, Point>> arcs;
  arcs.reserve(a.size());
  for (auto [u, v] : a.arcs()) arcs.emplace_back(s(u), s(v));
  return ArcSet(a.degree(), std::move(arcs));
}

OrbitalColoring orbital_coloring(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<std::uint32_t> color(n * n, kUncolored);
  std::uint32_t next = 0;
  std::vector<std::pair<Point, Point>> queue;
  for (Point u = 0; u < n; ++u) {
    for (Point v = 0; v < n; ++v) {
      if (color[u * n + v] != kUncolored) continue;
      const std::uint32_t c = next++;
      color[u * n + v] = c;
      queue.assign(1, {u, v});
      for (std::size_t t = 0; t < queue.size(); ++t) {
        auto [x, y] = queue[t];
        for (const auto& s : g.generators()) {
          Point sx = s(x), sy = s(y);
          if (color[sx * n + sy] == kUncolored) {
            color[sx * n + sy] = c;
            queue.emplace_back(sx, sy);
          }
        }
      }
    }
  }
  return OrbitalColoring(n, std::move(color), next);
}

PermGroup color_automorphisms(const OrbitalColoring& c, SearchBudget budget) {
  return group_from_search(to_matrix(c), budget);
}

PermGroup two_closure(const PermGroup& g, SearchBudget budget) {
  return color_automorphisms(orbital_coloring(g), budget);
}

std::vector<Permutation> brute_closure_elements(const PermGroup& g) {
  const std::size_t n = g.degree();
  check_brute_degree(n);
  const OrbitalColoring c = orbital_coloring(g);
  std::int64_t total = 1;
  for (std::size_t t = 2; t <= n; ++t) total *= static_cast<std::int64_t>(t);
  std::vector<char> keep(static_cast<std::size_t>(total), 0);
#pragma omp parallel
  {
    std::vector<Point> img;
#pragma omp for schedule(static)
    for (std::int64_t rank = 0; rank < total; ++rank) {
      unrank(static_cast<std::uint64_t>(rank), n, img);
      keep[static_cast<std::size_t>(rank)] = preserves_coloring(c, img) ? 1 : 0;
    }
  }
  std::vector<Permutation> out;
  std::vector<Point> img;
  for (std::int64_t rank = 0; rank < total; ++rank) {
    if (!keep[static_cast<std::size_t>(rank)]) continue;
    unrank(static_cast<std::uint64_t>(rank), n, img);
    out.emplace_back(img);
  }
  return out;
}

namespace serial {

std::vector<Permutation> brute_closure_elements(const PermGroup& g) {
  const std::size_t n = g.degree();
  check_brute_degree(n);
  const OrbitalColoring c = orbital_coloring(g);
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<Permutation> out;
  do {
    if (preserves_coloring(c, img)) out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace serial

PermGroup brute_two_closure(const PermGroup& g) {
  return generated_by_filtered(g.degree(), brute_closure_elements(g));
}

ArcSet arcs_of_colors(const OrbitalColoring& c, const std::set<std::uint32_t>& colors) {
  for (auto col : colors) {
    if (col >= c.num_colors()) throw DomainError("arcs_of_colors: unknown color");
    if (c.is_diagonal_color(col)) throw DomainError("arcs_of_colors: diagonal color selected");
  }
  std::vector<std::pair<Point, Point>> arcs;
  const std::size_t n = c.degree();
  for (Point u = 0; u < n; ++u) {
    for (Point v = 0; v < n; ++v) {
      if (colors.count(c.color(u, v))) arcs.emplace_back(u, v);
    }
  }
  return ArcSet(n, std::move(arcs));
}

PermGroup digraph_automorphisms(const ArcSet& a, SearchBudget budget) {
  return group_from_search(to_matrix(a), budget);
}

std::optional<Permutation> digraph_isomorphism(const ArcSet& a, const ArcSet& b, SearchBudget budget) {
  if (a.degree() != b.degree()) throw DomainError("digraph_isomorphism: degree mismatch");
  check_search_degree(a.degree());
  if (a.size() != b.size()) return std::nullopt;
  const auto ma = to_matrix(a);
  const auto mb = to_matrix(b);
  search::NodeCounter nodes(budget.node_cap);
  search::PathSearch s(ma, mb, nodes);
  return s.find({});
}

std::vector<std::uint32_t> canonical_form(const ArcSet& a, SearchBudget budget) {
  check_search_degree(a.degree());
  search::NodeCounter nodes(budget.node_cap);
  return search::canonical_matrix(to_matrix(a), nodes);
}

void write_dot(std::ostream& out, const ArcSet& a,
               std::optional<std::pair<std::uint32_t, std::uint32_t>> kr) {
  out << "digraph witness {\n";
  for (Point x = 0; x < a.degree(); ++x) {
    out << "  " << x;
    if (kr) {
      auto c = decode(x, kr->first, kr->second);
      out << " [label=\"(" << c.i << ',' << c.j << ',' << c.l << ")\"]";
    }
    out << ";\n";
  }
  for (auto [u, v] : a.arcs()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
}

void write_adjacency(std::ostream& out, const ArcSet& a) {
  out << a.degree() << '\n';
  for (auto [u, v] : a.arcs()) out << u << ' ' << v << '\n';
}

ArcSet parse_adjacency(std::istream& in) {
  std::string line;
  std::vector<long long> nums;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        nums.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("adjacency: bad token '" + tok + "'");
      }
    }
  }
  if (nums.empty()) throw ParseError("adjacency: missing vertex count");
  if (nums.size() % 2 != 1) throw ParseError("adjacency: dangling arc endpoint");
  const auto n = static_cast<std::size_t>(nums[0]);
  std::vector<std::pair<Point, Point>> arcs;
  for (std::size_t t = 1; t < nums.size(); t += 2) {
    arcs.emplace_back(static_cast<Point>(nums[t]), static_cast<Point>(nums[t + 1]));
  }
  try {
    return ArcSet(n, std::move(arcs));
  } catch (const DomainError& e) {
    throw ParseError(std::string("adjacency: ") + e.what());
  }
}

}  // namespace dci
