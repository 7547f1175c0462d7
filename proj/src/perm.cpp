#include "dci/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dci/error.hpp"

namespace dci {

Point encode(TripleCoord c, std::uint32_t k, std::uint32_t r) {
  if (k == 0 || r == 0) throw DomainError("encode: k and r must be positive");
  if (c.i >= 8 || c.j >= k || c.l >= r) {
    throw DomainError("encode: coordinate out of range");
  }
  return c.i + 8 * c.j + 8 * k * c.l;
}

TripleCoord decode(Point p, std::uint32_t k, std::uint32_t r) {
  if (k == 0 || r == 0) throw DomainError("decode: k and r must be positive");
  if (p >= 8 * k * r) throw DomainError("decode: point out of range");
  return {p % 8, (p / 8) % k, p / (8 * k)};
}

bool is_bijection(std::span<const Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) throw DomainError("permutation: images are not a bijection");
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  return Permutation(std::move(img), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::optional<Point> Permutation::smallest_moved_point() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return static_cast<Point>(x);
  }
  return std::nullopt;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    std::vector<Point> cyc;
    for (Point y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      cyc.push_back(y);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t t = 0; t < c.size(); ++t) os << (t ? " " : "") << c[t];
    os << ')';
  }
  return os.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t seed = p.degree();
  for (Point x : p.images()) seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw DomainError("compose: degree mismatch");
  std::vector<Point> img(p.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = q.images_[p.images_[x]];
  return Permutation(std::move(img), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> img(p.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[p.images_[x]] = static_cast<Point>(x);
  return Permutation(std::move(img), Permutation::Unchecked{});
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  if (p.degree() != g.degree()) throw DomainError("conjugate: degree mismatch");
  return compose(compose(inverse(g), p), g);
}

Permutation power(const Permutation& p, std::int64_t e) {
  Permutation base = e < 0 ? inverse(p) : p;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Permutation acc = Permutation::identity(p.degree());
  while (n > 0) {
    if (n & 1U) acc = compose(acc, base);
    base = compose(base, base);
    n >>= 1U;
  }
  return acc;
}

std::uint64_t element_order(const Permutation& p) {
  std::uint64_t m = 1;
  for (const auto& c : p.cycles()) m = std::lcm(m, static_cast<std::uint64_t>(c.size()));
  return m;
}

std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> type;
  std::size_t moved = 0;
  for (const auto& c : p.cycles()) {
    type.push_back(c.size());
    moved += c.size();
  }
  type.insert(type.end(), p.degree() - moved, 1);
  std::sort(type.begin(), type.end());
  return type;
}

Permutation from_cycles(const std::vector<std::vector<Point>>& cycles, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t t = 0; t < c.size(); ++t) {
      Point x = c[t];
      if (x >= degree) throw DomainError("from_cycles: point out of range");
      if (used[x]) throw DomainError("from_cycles: repeated point " + std::to_string(x));
      used[x] = true;
      img[x] = c[(t + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

}  // namespace dci
