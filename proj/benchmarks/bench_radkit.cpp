#include <benchmark/benchmark.h>

#include "radkit/emitter.hpp"
#include "radkit/powerflow.hpp"
#include "radkit/search.hpp"

using namespace radkit;

namespace {

const Network& case33_pu() {
    static Network net = to_per_unit(load_network_file(RADKIT_DATA_DIR "/case33.net"));
    return net;
}

const Network& case136_pu() {
    static Network net = to_per_unit(load_network_file(RADKIT_DATA_DIR "/case136.net"));
    return net;
}

void BM_DistflowSweep33(benchmark::State& state) {
    const Network& net = case33_pu();
    Configuration cfg = initial_configuration(net);
    for (auto _ : state) {
        PowerFlowResult res = solve_distflow(net, cfg);
        benchmark::DoNotOptimize(res.losses_kw);
    }
}
BENCHMARK(BM_DistflowSweep33);

void BM_DistflowSweep136(benchmark::State& state) {
    const Network& net = case136_pu();
    Configuration cfg = initial_configuration(net);
    for (auto _ : state) {
        PowerFlowResult res = solve_distflow(net, cfg);
        benchmark::DoNotOptimize(res.losses_kw);
    }
}
BENCHMARK(BM_DistflowSweep136);

void BM_Enumerate14(benchmark::State& state) {
    Network net = load_network_file(RADKIT_DATA_DIR "/case14.net");
    for (auto _ : state) {
        SearchReport report = enumerate_radial(net);
        benchmark::DoNotOptimize(report.best_losses_kw);
    }
}
BENCHMARK(BM_Enumerate14);

void BM_BranchExchange33(benchmark::State& state) {
    Network net = load_network_file(RADKIT_DATA_DIR "/case33.net");
    Configuration start = initial_configuration(net);
    for (auto _ : state) {
        SearchReport report = local_search_branch_exchange(net, start);
        benchmark::DoNotOptimize(report.best_losses_kw);
    }
}
BENCHMARK(BM_BranchExchange33);

void BM_EmitLp(benchmark::State& state) {
    const Network& net = case136_pu();
    ModelIR model = build_model(net, FormulationKind::mcf_st);
    for (auto _ : state) {
        std::string lp = write_lp(model);
        benchmark::DoNotOptimize(lp.size());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(write_lp(model).size()));
}
BENCHMARK(BM_EmitLp);

void BM_TreeCount136(benchmark::State& state) {
    Network net = load_network_file(RADKIT_DATA_DIR "/case136.net");
    for (auto _ : state) {
        TreeCount count = count_spanning_trees(net);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_TreeCount136);

} // namespace

BENCHMARK_MAIN();
