#include "cmq/workbench.hpp"

#include <benchmark/benchmark.h>

using namespace cmq;

namespace {

const ResidueRing& ring(long f) {
    static std::map<long, ResidueRing> cache;
    auto it = cache.find(f);
    if (it == cache.end()) it = cache.emplace(f, ResidueRing::of_order(Order::maximal(CMField::make(4, 2)), f)).first;
    return it->second;
}

RatMat ideal_gram(long bound_scale, Rat& bound) {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    auto b = primes_above(ok, 11).front().ideal.basis();
    RatMat g = t2_gram(*k, b);
    bound = g(0, 0) * Rat(bound_scale);
    return g;
}

void BM_units_serial(benchmark::State& st) {
    const ResidueRing& r = ring(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(count_units_serial(r));
    st.counters["ring_size"] = static_cast<double>(r.size());
}

void BM_units_parallel(benchmark::State& st) {
    const ResidueRing& r = ring(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(count_units_parallel(r));
    st.counters["ring_size"] = static_cast<double>(r.size());
}

void BM_short_serial(benchmark::State& st) {
    Rat bound;
    RatMat g = ideal_gram(st.range(0), bound);
    std::size_t n = 0;
    for (auto _ : st) n = short_vectors(g, bound).size();
    st.counters["vectors"] = static_cast<double>(n);
}

void BM_short_parallel(benchmark::State& st) {
    Rat bound;
    RatMat g = ideal_gram(st.range(0), bound);
    std::size_t n = 0;
    for (auto _ : st) n = short_vectors_parallel(g, bound).size();
    st.counters["vectors"] = static_cast<double>(n);
}

}  // namespace

BENCHMARK(BM_units_serial)->Arg(6)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_units_parallel)->Arg(6)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_short_serial)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_short_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
