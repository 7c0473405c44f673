#include <benchmark/benchmark.h>

#include "psqm/bounds.hpp"
#include "psqm/gf2m.hpp"
#include "psqm/max_clique.hpp"
#include "psqm/protocols.hpp"
#include "psqm/rng.hpp"
#include "psqm/verify.hpp"

namespace {

void BM_FieldMul(benchmark::State& state) {
  const auto q = psqm::gf2m::find_irreducible(static_cast<int>(state.range(0)));
  const std::uint64_t mask = (std::uint64_t{1} << state.range(0)) - 1;
  psqm::gf2m::FieldElement acc(0x5a5a5a5aU & mask, q);
  const psqm::gf2m::FieldElement b(0x3c3c3c3cU & mask, q);
  for (auto _ : state) {
    acc = acc * b + b;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(16)->Arg(32);

void BM_Sum2RunAll(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const psqm::protocols::Sum2Protocol p(k);
  psqm::InputTuple x(static_cast<std::size_t>(k), psqm::BitString::from_string("01"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.run_all(x));
  }
}
BENCHMARK(BM_Sum2RunAll)->DenseRange(2, 6);

void BM_DjPrivacy(benchmark::State& state) {
  const psqm::protocols::DjProtocol p(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psqm::verify::check_privacy(p));
  }
}
BENCHMARK(BM_DjPrivacy)->Unit(benchmark::kMillisecond);

void BM_Alpha(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  psqm::Rng rng(1);
  std::vector<std::string> labels;
  for (int i = 0; i < side; ++i) {
    labels.push_back(std::to_string(i));
  }
  std::vector<std::vector<psqm::bounds::Entry>> e(static_cast<std::size_t>(side),
                                                  std::vector<psqm::bounds::Entry>(static_cast<std::size_t>(side)));
  for (auto& row : e) {
    for (auto& c : row) {
      c = rng.bit();
    }
  }
  const psqm::bounds::FunctionTable f(labels, labels, e);
  const auto mu = psqm::bounds::InputDistribution::uniform(f.row_count(), f.col_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(psqm::bounds::alpha(f, mu));
  }
}
BENCHMARK(BM_Alpha)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_MaxClique(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  psqm::Rng rng(2);
  psqm::SmallGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.below(4) != 0) {
        g.add_edge(u, v);
      }
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(psqm::maximum_clique(g));
  }
}
BENCHMARK(BM_MaxClique)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
