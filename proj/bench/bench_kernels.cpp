// Serial reference kernels against their OpenMP counterparts.

#include "ehae/feynman.hpp"
#include "ehae/solver.hpp"

#include <benchmark/benchmark.h>

using namespace ehae;

namespace {

RingElement dense(Basis b, int power) {
    RingElement s = RingElement::constant(b, FieldElement(Rational(1)));
    for (int i = 0; i < kGenerators; ++i) s += RingElement::generator(b, i) * field_disc(-(i % 3));
    RingElement r = RingElement::constant(b, FieldElement(Rational(1)));
    for (int k = 0; k < power; ++k) r = multiply_serial(r, s);
    return r;
}

Solver& solver() {
    static Solver s = [] {
        Solver x(SolverOptions{24, 8, false});
        x.resolve(0, 4);
        x.resolve(1, 1);
        return x;
    }();
    return s;
}

void BM_ProductSerial(benchmark::State& st) {
    RingElement a = dense(Basis::J, static_cast<int>(st.range(0))), b = dense(Basis::J, 2);
    for (auto _ : st) benchmark::DoNotOptimize(multiply_serial(a, b));
    st.counters["terms"] = static_cast<double>(a.size() * b.size());
}

void BM_ProductParallel(benchmark::State& st) {
    RingElement a = dense(Basis::J, static_cast<int>(st.range(0))), b = dense(Basis::J, 2);
    for (auto _ : st) benchmark::DoNotOptimize(multiply_parallel(a, b));
    st.counters["terms"] = static_cast<double>(a.size() * b.size());
}

void feynman_case(benchmark::State& st, bool parallel) {
    int g = static_cast<int>(st.range(0)), h = static_cast<int>(st.range(1));
    AmplitudeLookup amp = solver().store().lookup();
    sum_feynman_serial(g, h, amp, Basis::J);  // warm the derived-amplitude memo
    for (auto _ : st) {
        if (parallel) benchmark::DoNotOptimize(sum_feynman(g, h, amp, Basis::J));
        else benchmark::DoNotOptimize(sum_feynman_serial(g, h, amp, Basis::J));
    }
}

void BM_FeynmanSerial(benchmark::State& st) { feynman_case(st, false); }
void BM_FeynmanParallel(benchmark::State& st) { feynman_case(st, true); }

}  // namespace

BENCHMARK(BM_ProductSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FeynmanSerial)->Args({0, 4})->Args({1, 2})->Args({0, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FeynmanParallel)->Args({0, 4})->Args({1, 2})->Args({0, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
