#include <benchmark/benchmark.h>

#include <string>

#include "seanode/equivalence.hpp"
#include "seanode/exec.hpp"
#include "seanode/format.hpp"
#include "seanode/optimizer.hpp"
#include "seanode/wellformed.hpp"

namespace {

using namespace seanode;

const Program& corpus(const std::string& name) {
    static std::map<std::string, Program> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, load_program(std::string(SEANODE_CORPUS_DIR) + "/" + name + ".json")).first;
    return it->second;
}

void BM_RunFactorial(benchmark::State& state) {
    const Program& p = corpus("factorial");
    Signature sig = find_method(p, "fact");
    Params args{IntVal{static_cast<std::int32_t>(state.range(0))}};
    std::size_t steps = 0;
    for (auto _ : state) {
        ExecResult r = run(p, sig, args, 1'000'000);
        steps = r.steps;
        benchmark::DoNotOptimize(r);
    }
    state.counters["steps"] = static_cast<double>(steps);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_RunFactorial)->Arg(5)->Arg(13)->Arg(1000);

void BM_RunCallChain(benchmark::State& state) {
    const Program& p = corpus("call-chain");
    Signature sig = find_method(p, "main");
    for (auto _ : state)
        benchmark::DoNotOptimize(run(p, sig, {IntVal{7}}, 1'000'000));
}
BENCHMARK(BM_RunCallChain);

void BM_CheckWellFormed(benchmark::State& state) {
    const Program& p = corpus("factorial");
    const Graph& g = p.begin()->second;
    for (auto _ : state)
        benchmark::DoNotOptimize(check(g));
}
BENCHMARK(BM_CheckWellFormed);

void BM_Canonicalize(benchmark::State& state) {
    const Program& p = corpus("canon-arith");
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_pass(p, Pass::All));
}
BENCHMARK(BM_Canonicalize);

void BM_CondElim(benchmark::State& state) {
    const Program& p = corpus("nested-dup");
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_pass(p, Pass::CondElim));
}
BENCHMARK(BM_CondElim);

void BM_BehaviorDiff(benchmark::State& state) {
    const Program& lhs = corpus("factorial");
    const Program& rhs = corpus("factorial-opt");
    Signature sig = find_method(lhs, "fact");
    Domain dom;
    dom.int_values.clear();
    for (int v = -5; v <= 20; ++v)
        dom.int_values.push_back(v);
    for (auto _ : state)
        benchmark::DoNotOptimize(behavior_diff(lhs, rhs, sig, dom, 100'000));
}
BENCHMARK(BM_BehaviorDiff);

} // namespace

BENCHMARK_MAIN();
