#include "dci/chain.hpp"

#include <random>

#include "dci/error.hpp"

namespace dci {

namespace {

// Product replacement sampler over a fixed generator list.
class RandomElements {
 public:
  RandomElements(std::size_t degree, std::span<const Permutation> gens, std::uint64_t seed)
      : rng_(seed), acc_(Permutation::identity(degree)) {
    constexpr std::size_t kSlots = 10;
    for (std::size_t s = 0; s < std::max(kSlots, gens.size()); ++s) {
      slots_.push_back(gens[s % gens.size()]);
    }
    for (int warm = 0; warm < 50; ++warm) next();
  }

  Permutation next() {
    std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
    std::size_t s = pick(rng_);
    std::size_t t = pick(rng_);
    if (s == t) t = (t + 1) % slots_.size();
    if (rng_() & 1U) {
      slots_[s] = compose(slots_[s], slots_[t]);
    } else {
      slots_[s] = compose(slots_[t], slots_[s]);
    }
    acc_ = compose(acc_, slots_[s]);
    return acc_;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<Permutation> slots_;
  Permutation acc_;
};

}  // namespace

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t n = 1;
  for (const auto& lv : levels_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(lv.orbit.size()), &n)) {
      throw CapacityError("group order exceeds 64 bits");
    }
  }
  return n;
}

StabilizerChain::SiftResult StabilizerChain::sift(const Permutation& p, std::size_t from) const {
  if (p.degree() != degree_) throw DomainError("sift: degree mismatch");
  Permutation g = p;
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    Point x = g(lv.base);
    if (!lv.transversal[x]) return {std::move(g), i};
    g = compose(g, *lv.transversal_inverse[x]);
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& p) const {
  auto r = sift(p);
  return r.level == levels_.size() && r.residue.is_identity();
}

void StabilizerChain::rebuild_orbit(std::size_t level) {
  Level& lv = levels_[level];
  lv.orbit.assign(1, lv.base);
  lv.transversal.assign(degree_, std::nullopt);
  lv.transversal_inverse.assign(degree_, std::nullopt);
  lv.transversal[lv.base] = Permutation::identity(degree_);
  lv.transversal_inverse[lv.base] = Permutation::identity(degree_);
  for (std::size_t t = 0; t < lv.orbit.size(); ++t) {
    Point x = lv.orbit[t];
    for (const auto& s : lv.generators) {
      Point y = s(x);
      if (lv.transversal[y]) continue;
      lv.transversal[y] = compose(*lv.transversal[x], s);
      lv.transversal_inverse[y] = inverse(*lv.transversal[y]);
      lv.orbit.push_back(y);
    }
  }
}

// h fixes the base points of levels [0, to) and lies in the group of level
// `from`; it becomes a strong generator of levels from..to.
void StabilizerChain::add_strong(const Permutation& h, std::size_t from, std::size_t to,
                                 std::vector<bool>& dirty) {
  if (to == levels_.size()) {
    Level lv;
    lv.base = *h.smallest_moved_point();
    levels_.push_back(std::move(lv));
    dirty.push_back(false);
  }
  for (std::size_t l = from; l <= to; ++l) {
    levels_[l].generators.push_back(h);
    rebuild_orbit(l);
    dirty[l] = true;
  }
}

void StabilizerChain::complete(std::vector<bool>& dirty) {
  while (true) {
    std::size_t l = levels_.size();
    while (l > 0 && !dirty[l - 1]) --l;
    if (l == 0) return;
    --l;
    dirty[l] = false;
    // Orbit and generators of level l only change through sifts that start
    // above l, so both are stable inside this loop.
    const std::size_t orbit_size = levels_[l].orbit.size();
    const std::size_t gen_count = levels_[l].generators.size();
    for (std::size_t t = 0; t < orbit_size; ++t) {
      for (std::size_t s = 0; s < gen_count; ++s) {
        const Level& lv = levels_[l];
        Point x = lv.orbit[t];
        const Permutation& gen = lv.generators[s];
        Permutation schreier =
            compose(compose(*lv.transversal[x], gen), *lv.transversal_inverse[gen(x)]);
        auto r = sift(schreier, l + 1);
        if (!r.residue.is_identity()) add_strong(r.residue, l + 1, r.level, dirty);
      }
    }
  }
}

StabilizerChain StabilizerChain::build(std::size_t degree, std::span<const Permutation> gens,
                                       std::uint64_t seed) {
  StabilizerChain chain(degree);
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DomainError("schreier_sims: degree mismatch");
    if (!g.is_identity()) nontrivial.push_back(g);
  }
  if (nontrivial.empty()) return chain;

  std::vector<bool> dirty;
  for (const auto& g : nontrivial) {
    auto r = chain.sift(g);
    if (!r.residue.is_identity()) chain.add_strong(r.residue, 0, r.level, dirty);
  }

  constexpr int kConsecutiveHits = 20;
  RandomElements sampler(degree, nontrivial, seed);
  for (int hits = 0; hits < kConsecutiveHits;) {
    auto r = chain.sift(sampler.next());
    if (r.residue.is_identity()) {
      ++hits;
    } else {
      chain.add_strong(r.residue, 0, r.level, dirty);
      hits = 0;
    }
  }

  chain.complete(dirty);
  return chain;
}

}  // namespace dci
