#include "choicelab/joint_choice.hpp"
#include "choicelab/random_utility.hpp"

#include <benchmark/benchmark.h>

using namespace choicelab;

namespace {

void BM_orient_exact(benchmark::State& state) {
    const RatPt a{rat(-1, 2), rat(-1, 2)}, b{rat(1, 3), rat(2, 7)}, c{rat(5, 11), rat(1, 13)};
    for (auto _ : state) benchmark::DoNotOptimize(orient(a, b, c));
}
BENCHMARK(BM_orient_exact);

void BM_weighted_value(benchmark::State& state) {
    const WUFunctional v1 = example1_v1();
    const Lottery p(rat(1, 3), rat(1, 5));
    for (auto _ : state) benchmark::DoNotOptimize(v1.value(p));
}
BENCHMARK(BM_weighted_value);

void BM_ternary_mc(benchmark::State& state) {
    const Menu D({Lottery(rat(1, 4), rat(1, 4)), Lottery(rat(3, 4), rat(1, 8)),
                  Lottery(rat(1, 8), rat(3, 4))});
    McOptions opt;
    opt.n = static_cast<uint64_t>(state.range(0));
    opt.threads = 1;
    opt.mode = McOptions::Mode::monte_carlo;
    for (auto _ : state) {
        opt.seed += 1;
        benchmark::DoNotOptimize(choice_prob(nu1(), D, {0}, opt));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ternary_mc)->Arg(1 << 14)->Arg(1 << 17);

void BM_decompose4(benchmark::State& state) {
    auto ev = [](long px, long py, long qx, long qy) {
        return BinaryEvent(Lottery(rat(px, 10), rat(py, 10)), Lottery(rat(qx, 10), rat(qy, 10)));
    };
    const std::array<BinaryEvent, 4> cfg{ev(6, 4, 6, 0), ev(4, 6, 0, 6), ev(3, 7, 0, 4),
                                         ev(2, 8, 0, 8)};
    for (auto _ : state) benchmark::DoNotOptimize(decompose4(cfg));
}
BENCHMARK(BM_decompose4);

void BM_exact_rcc_row(benchmark::State& state) {
    const Menu D({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(3, 4)),
                  Lottery(rat(1, 2), rat(1, 8)), Lottery(rat(1, 8), rat(1, 8))});
    const FiniteMixture mu = example1_mu();
    for (auto _ : state) benchmark::DoNotOptimize(rcc_from(mu, {D}));
}
BENCHMARK(BM_exact_rcc_row);

} // namespace

BENCHMARK_MAIN();
