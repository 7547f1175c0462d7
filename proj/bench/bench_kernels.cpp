// Times each OpenMP kernel against its serial reference and checks that the
// two produce identical results. Usage: bench_kernels [repetitions]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <tuple>

#include "dci/dci.hpp"

using namespace dci;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int t = 0; t < reps; ++t) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <class Par, class Ser>
void row(const std::string& name, int reps, Par par, Ser ser) {
  decltype(par()) a{}, b{};
  const double tp = best_of(reps, [&] { a = par(); });
  const double ts = best_of(reps, [&] { b = ser(); });
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), ts, tp, tp > 0 ? ts / tp : 0.0,
              a == b ? "same" : "MISMATCH");
}

auto key(const WitnessResult& w) { return std::make_tuple(w.fallback, w.colors, w.s_sets, w.t_sets, w.iso); }

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, repetitions: %d (best time reported, seconds)\n", omp_get_max_threads(), reps);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial", "parallel", "speedup");

  for (const ConstructionParams p : {ConstructionParams{3, 1}, ConstructionParams{5, 1}, ConstructionParams{1, 3}}) {
    const auto b = build(p);
    const std::string tag = " k=" + std::to_string(p.k) + " r=" + std::to_string(p.r);
    row("are_conjugate_subgroups" + tag, reps, [&] { return are_conjugate_subgroups(b.g, b.r2, b.r1); },
        [&] { return serial::are_conjugate_subgroups(b.g, b.r2, b.r1); });
    row("witness_digraphs" + tag, reps, [&] { return key(witness_digraphs(b)); },
        [&] { return key(serial::witness_digraphs(b)); });
  }

  const auto g11 = build({1, 1}).g;
  row("brute_closure_elements k=1 r=1", reps, [&] { return brute_closure_elements(g11); },
      [&] { return serial::brute_closure_elements(g11); });
  const PermGroup s4_on_8(8, {from_cycles({{0, 1}, {4, 5}}, 8), from_cycles({{0, 1, 2, 3}, {4, 5, 6, 7}}, 8)});
  row("brute_closure_elements S4 x2", reps, [&] { return brute_closure_elements(s4_on_8); },
      [&] { return serial::brute_closure_elements(s4_on_8); });

  for (const char* name : {"c8", "c2xc4", "d4", "q8"}) {
    const auto g = *group_by_name(name);
    auto pairs = [](const std::vector<ViolatingPair>& v) {
      std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
      for (const auto& x : v) out.emplace_back(x.s, x.t);
      return out;
    };
    row(std::string("dci_brute ") + name, reps, [&] { return pairs(dci_brute(g)); },
        [&] { return pairs(serial::dci_brute(g)); });
  }
  return 0;
}
