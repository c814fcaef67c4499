#include <benchmark/benchmark.h>

#include <vector>

#include "ofdmim/channel.hpp"
#include "ofdmim/detectors.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/rng.hpp"

using namespace ofdmim;

namespace {

ActiveLikelihoods make_metrics(int n, std::uint64_t seed) {
    TrialRng rng = TrialRng::for_trial(seed, 0);
    std::vector<cxd> r(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(n));
    for (auto& v : h) v = rng.cnormal(1.0);
    for (auto& v : r) v = rng.cnormal(4.0);
    return compute_metrics(r, h, Constellation::qpsk());
}

void bench_compute_metrics(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TrialRng rng = TrialRng::for_trial(1, 0);
    std::vector<cxd> r(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(n));
    for (auto& v : h) v = rng.cnormal(1.0);
    for (auto& v : r) v = rng.cnormal(4.0);
    const Constellation c = Constellation::qpsk();
    ActiveLikelihoods al;
    for (auto _ : state) {
        compute_metrics(r, h, c, al);
        benchmark::DoNotOptimize(al.a.data());
    }
}
BENCHMARK(bench_compute_metrics)->Arg(8)->Arg(10);

void bench_ml_detect(benchmark::State& state) {
    SapDetector det(SubblockParams(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 4));
    const ActiveLikelihoods al = make_metrics(static_cast<int>(state.range(0)), 2);
    DetectionResult out;
    for (auto _ : state) {
        det.ml_detect(al, out);
        benchmark::DoNotOptimize(out.sap.mask);
    }
}
BENCHMARK(bench_ml_detect)->Args({8, 4})->Args({10, 5});

void bench_klv_detect(benchmark::State& state) {
    SapDetector det(SubblockParams(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 4));
    const ActiveLikelihoods al = make_metrics(static_cast<int>(state.range(0)), 3);
    DetectionResult out;
    for (auto _ : state) {
        det.klv_detect(al, out);
        benchmark::DoNotOptimize(out.sap.mask);
    }
}
BENCHMARK(bench_klv_detect)->Args({8, 4})->Args({10, 5});

void bench_subml_detect(benchmark::State& state) {
    SapDetector det(SubblockParams(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 4));
    const ActiveLikelihoods al = make_metrics(static_cast<int>(state.range(0)), 4);
    DetectionResult out;
    for (auto _ : state) {
        det.subml_detect(al, out);
        benchmark::DoNotOptimize(out.sap.mask);
    }
}
BENCHMARK(bench_subml_detect)->Args({8, 4})->Args({10, 5});

void bench_rank_roundtrip(benchmark::State& state) {
    SubblockParams params(8, 4, 4);
    std::uint64_t rank = 0;
    for (auto _ : state) {
        const Sap sap = sap_from_rank(rank, params);
        benchmark::DoNotOptimize(rank_of_mask(sap.mask, params));
        rank = (rank + 1) % params.pattern_count();
    }
}
BENCHMARK(bench_rank_roundtrip);

void bench_channel_sample(benchmark::State& state) {
    ChannelModel model(PowerDelayProfile::exponential(), static_cast<int>(state.range(0)));
    TrialRng rng = TrialRng::for_trial(5, 0);
    ChannelRealization chan;
    for (auto _ : state) {
        model.sample(rng, chan);
        benchmark::DoNotOptimize(chan.cfr.data());
    }
}
BENCHMARK(bench_channel_sample)->Arg(100)->Arg(128);

void bench_full_trial(benchmark::State& state) {
    MonteCarloConfig config(FrameConfig(128, SubblockParams(8, 4, 4)), Constellation::qpsk());
    config.snr_grid_db = {20.0};
    TrialRunner runner(config);
    OutcomeTally tally(config.effective_label_depth());
    std::uint64_t trial = 0;
    for (auto _ : state) {
        runner.run(trial++, 20.0, tally);
        benchmark::DoNotOptimize(tally.subblocks);
    }
}
BENCHMARK(bench_full_trial);

}  // namespace

BENCHMARK_MAIN();
