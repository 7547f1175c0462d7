#include "partition_search.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dci/error.hpp"

namespace dci::search {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

std::uint64_t hash_key(const std::vector<std::uint64_t>& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : key) h = mix(h, v);
  return h;
}

void renumber(Partition& p, std::size_t from) {
  for (std::size_t c = from; c < p.cells.size(); ++c) {
    for (Point x : p.cells[c]) p.cell_of[x] = static_cast<std::uint32_t>(c);
  }
}

}  // namespace

Partition Partition::unit(std::size_t n) {
  Partition p;
  p.cells.emplace_back(n);
  std::iota(p.cells[0].begin(), p.cells[0].end(), Point{0});
  p.cell_of.assign(n, 0);
  if (n == 0) p.cells.clear();
  return p;
}

std::size_t Partition::target_cell() const {
  std::size_t best = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].size() > 1 && (best == cells.size() || cells[c].size() < cells[best].size())) best = c;
  }
  return best;
}

std::uint64_t refine(const ColorMatrix& m, Partition& p) {
  const std::size_t n = m.n;
  std::uint64_t trace = 0xcbf29ce484222325ULL;
  std::vector<std::vector<std::uint64_t>> key(n);
  while (true) {
    const std::size_t before = p.cells.size();
    for (const auto& cell : p.cells) {
      if (cell.size() < 2) continue;
      for (Point v : cell) {
        auto& k = key[v];
        k.resize(n);
        for (Point w = 0; w < n; ++w) {
          k[w] = (std::uint64_t{p.cell_of[w]} << 42) | (std::uint64_t{m.at(v, w)} << 21) | m.at(w, v);
        }
        std::sort(k.begin(), k.end());
      }
    }
    std::vector<std::vector<Point>> next;
    next.reserve(n);
    for (auto& cell : p.cells) {
      if (cell.size() < 2) {
        next.push_back(std::move(cell));
        continue;
      }
      std::sort(cell.begin(), cell.end(), [&](Point a, Point b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
      });
      std::size_t start = 0;
      for (std::size_t t = 1; t <= cell.size(); ++t) {
        if (t == cell.size() || key[cell[t]] != key[cell[start]]) {
          next.emplace_back(cell.begin() + static_cast<std::ptrdiff_t>(start),
                            cell.begin() + static_cast<std::ptrdiff_t>(t));
          trace = mix(trace, t - start);
          trace = mix(trace, hash_key(key[cell[start]]));
          start = t;
        }
      }
    }
    p.cells = std::move(next);
    renumber(p, 0);
    trace = mix(trace, p.cells.size());
    if (p.cells.size() == before) return trace;
  }
}

void individualize(Partition& p, Point v) {
  const std::size_t c = p.cell_of[v];
  std::vector<Point> rest;
  rest.reserve(p.cells[c].size() - 1);
  for (Point x : p.cells[c]) {
    if (x != v) rest.push_back(x);
  }
  p.cells[c] = {v};
  p.cells.insert(p.cells.begin() + static_cast<std::ptrdiff_t>(c) + 1, std::move(rest));
  renumber(p, c);
}

bool preserves(const ColorMatrix& src, const ColorMatrix& dst, const Permutation& sigma) {
  if (src.n != dst.n || sigma.degree() != src.n) return false;
  for (Point u = 0; u < src.n; ++u) {
    for (Point v = 0; v < src.n; ++v) {
      if (dst.at(sigma(u), sigma(v)) != src.at(u, v)) return false;
    }
  }
  return true;
}

void NodeCounter::tick() {
  if (++count_ > cap_) {
    throw CapacityError("search node budget of " + std::to_string(cap_) + " exceeded");
  }
}

PathSearch::PathSearch(const ColorMatrix& src, const ColorMatrix& dst, NodeCounter& nodes)
    : src_(src), dst_(dst), nodes_(nodes) {
  Partition p = Partition::unit(src.n);
  traces_.push_back(refine(src, p));
  partitions_.push_back(p);
  while (!p.discrete()) {
    std::size_t tc = p.target_cell();
    Point b = p.cells[tc].front();
    path_.push_back(b);
    target_cells_.push_back(tc);
    individualize(p, b);
    traces_.push_back(mix(tc, refine(src, p)));
    partitions_.push_back(p);
  }
  if (dst.n != src.n) {
    root_matches_ = false;
    return;
  }
  dst_root_ = Partition::unit(dst.n);
  root_matches_ = refine(dst, dst_root_) == traces_[0] &&
                  dst_root_.cells.size() == partitions_[0].cells.size();
}

std::optional<Permutation> PathSearch::find(std::span<const Point> prefix) {
  if (!root_matches_) return std::nullopt;
  return dfs(0, dst_root_, prefix);
}

std::optional<Permutation> PathSearch::dfs(std::size_t level, const Partition& q,
                                           std::span<const Point> prefix) {
  const Partition& ps = partitions_[level];
  if (q.cells.size() != ps.cells.size()) return std::nullopt;
  if (level == path_.size()) {
    std::vector<Point> img(src_.n);
    for (std::size_t c = 0; c < ps.cells.size(); ++c) img[ps.cells[c].front()] = q.cells[c].front();
    Permutation sigma(std::move(img));
    if (preserves(src_, dst_, sigma)) return sigma;
    return std::nullopt;
  }
  const std::size_t tc = target_cells_[level];
  std::vector<Point> candidates;
  if (level < prefix.size()) {
    if (q.cell_of[prefix[level]] != tc) return std::nullopt;
    candidates.push_back(prefix[level]);
  } else {
    candidates = q.cells[tc];
  }
  for (Point y : candidates) {
    nodes_.tick();
    Partition next = q;
    individualize(next, y);
    if (mix(tc, refine(dst_, next)) != traces_[level + 1]) continue;
    if (auto r = dfs(level + 1, next, prefix)) return r;
  }
  return std::nullopt;
}

namespace {

std::vector<bool> orbit_of(Point base, const std::vector<Permutation>& gens, std::size_t n,
                           std::size_t& size) {
  std::vector<bool> in(n, false);
  std::vector<Point> queue{base};
  in[base] = true;
  for (std::size_t t = 0; t < queue.size(); ++t) {
    for (const auto& g : gens) {
      Point y = g(queue[t]);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  size = queue.size();
  return in;
}

}  // namespace

AutomorphismResult automorphisms(const ColorMatrix& m, NodeCounter& nodes) {
  PathSearch s(m, m, nodes);
  const auto& path = s.path();
  AutomorphismResult out;
  out.orbit_lengths.assign(path.size(), 1);
  for (std::size_t i = path.size(); i-- > 0;) {
    std::vector<Point> prefix(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    std::size_t size = 0;
    auto in = orbit_of(path[i], out.generators, m.n, size);
    for (Point x : s.partition_at(i).cells[s.target_cell_at(i)]) {
      if (in[x]) continue;
      prefix.back() = x;
      if (auto sigma = s.find(prefix)) {
        out.generators.push_back(std::move(*sigma));
        in = orbit_of(path[i], out.generators, m.n, size);
      }
    }
    out.orbit_lengths[i] = size;
  }
  return out;
}

std::vector<std::uint32_t> canonical_matrix(const ColorMatrix& m, NodeCounter& nodes) {
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> cand(m.n * m.n);
  auto dfs = [&](auto&& self, const Partition& q) -> void {
    if (q.discrete()) {
      for (std::size_t a = 0; a < m.n; ++a) {
        for (std::size_t b = 0; b < m.n; ++b) {
          cand[a * m.n + b] = m.at(q.cells[a].front(), q.cells[b].front());
        }
      }
      if (best.empty() || cand < best) best = cand;
      return;
    }
    const std::size_t tc = q.target_cell();
    for (Point y : q.cells[tc]) {
      nodes.tick();
      Partition next = q;
      individualize(next, y);
      refine(m, next);
      self(self, next);
    }
  };
  Partition root = Partition::unit(m.n);
  refine(m, root);
  dfs(dfs, root);
  return best;
}

}  // namespace dci::search
