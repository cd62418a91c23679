#include <benchmark/benchmark.h>

#include <linnik/arith.hpp>
#include <linnik/characters.hpp>
#include <linnik/crop.hpp>
#include <linnik/ledger.hpp>
#include <linnik/pmin.hpp>
#include <linnik/quintet.hpp>

using namespace linnik;

static void BM_sieve_progression(benchmark::State &state)
{
    const u64 hi = static_cast<u64>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sieve_primes({0, hi, 7, 3}).size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(hi));
}
BENCHMARK(BM_sieve_progression)->Arg(1 << 20)->Arg(1 << 24);

static void BM_character_group(benchmark::State &state)
{
    const u64 q = static_cast<u64>(state.range(0));
    for (auto _ : state) {
        const CharacterGroup G(q);
        benchmark::DoNotOptimize(G.characters().size());
    }
}
BENCHMARK(BM_character_group)->Arg(360)->Arg(997);

static void BM_orthogonality(benchmark::State &state)
{
    const CharacterGroup G(static_cast<u64>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_orthogonality(G).failures);
    }
}
BENCHMARK(BM_orthogonality)->Arg(120)->Arg(500);

static void BM_quintet_sum(benchmark::State &state)
{
    const SharpCrop f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(quintet_sum(1000000000, 7, 3, f).Q);
    }
}
BENCHMARK(BM_quintet_sum)->Unit(benchmark::kMillisecond);

static void BM_ledger(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ledger().size());
    }
}
BENCHMARK(BM_ledger)->Unit(benchmark::kMillisecond);

static void BM_pmin_survey(benchmark::State &state)
{
    SurveyOptions opt;
    opt.q_hi = static_cast<u64>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(survey(opt).records.size());
    }
}
BENCHMARK(BM_pmin_survey)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
