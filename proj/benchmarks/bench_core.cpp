#include <benchmark/benchmark.h>

#include <random>

#include "slocal/congruence.hpp"
#include "slocal/flags.hpp"
#include "slocal/verify.hpp"

using namespace slocal;

namespace {

std::vector<FiniteMat> sl2_gens(std::uint32_t q) {
  return {FiniteMat::elementary(q, 2, 1, 2, 1), FiniteMat::elementary(q, 2, 2, 1, 1)};
}

}  // namespace

static void BM_RingMul(benchmark::State& state) {
  const Ring ring = make_ring(Characteristic::zero, 7, static_cast<unsigned>(state.range(0)));
  std::mt19937_64 rng(1);
  const RingElem a = verify::random_element(ring, rng);
  const RingElem b = verify::random_element(ring, rng);
  for (auto _ : state) {
    RingElem c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RingMul)->Arg(8)->Arg(32)->Arg(128);

static void BM_Invert(benchmark::State& state) {
  const Ring ring = make_ring(Characteristic::zero, 5, static_cast<unsigned>(state.range(0)));
  std::mt19937_64 rng(2);
  const RingElem u = verify::random_unit(ring, rng);
  for (auto _ : state) {
    RingElem v = invert(u);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Invert)->Arg(8)->Arg(32);

static void BM_DecomposeSL2(benchmark::State& state) {
  const Ring ring = make_ring(Characteristic::zero, 5, 12);
  std::mt19937_64 rng(3);
  std::vector<RMatrix> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(verify::random_sl(ring, 2, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    ElementaryWord w = decompose_sl2(pool[i++ & 63]);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DecomposeSL2);

static void BM_DecomposeSL4(benchmark::State& state) {
  const Ring ring = make_ring(Characteristic::zero, 2, 10);
  std::mt19937_64 rng(4);
  std::vector<RMatrix> pool;
  for (int i = 0; i < 16; ++i) pool.push_back(verify::random_sl(ring, 4, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    ElementaryWord w = decompose_sln(pool[i++ & 15]);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DecomposeSL4);

static void BM_GroupClosure(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    FiniteGroup g = group_closure(sl2_gens(q));
    benchmark::DoNotOptimize(g);
    state.counters["elements"] = static_cast<double>(g.size());
  }
}
BENCHMARK(BM_GroupClosure)->Arg(8)->Arg(9)->Arg(25)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Abelianization(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const FiniteGroup g = group_closure(sl2_gens(q));
  for (auto _ : state) {
    auto factors = abelianization(g);
    benchmark::DoNotOptimize(factors);
  }
}
BENCHMARK(BM_Abelianization)->Arg(9)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_JHSeries(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  QMatrix t(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.set(i, j, mpq_class(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 2)));
  // retry until invertible
  for (;;) {
    try {
      (void)t.inverse();
      break;
    } catch (const Error&) {
      for (int i = 0; i < d; ++i) t.set(i, i, t.at(i, i) + 1);
    }
  }
  const QMatrix tinv = t.inverse();
  std::vector<QMatrix> mats;
  for (int s = 0; s < 3; ++s) {
    QMatrix u = QMatrix::identity(d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        u.set(i, j, mpq_class(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3)));
    mats.push_back(t * u * tinv);
  }
  for (auto _ : state) {
    Flag f = jh_series(mats);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_JHSeries)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
