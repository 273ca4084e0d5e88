#include <benchmark/benchmark.h>

#include "cellcache/clustering.hpp"
#include "cellcache/learning.hpp"
#include "cellcache/simulator.hpp"
#include "cellcache/traffic.hpp"

using namespace cellcache;

static void BM_ZipfPopularity(benchmark::State& state) {
    const ZipfConfig cfg{static_cast<std::size_t>(state.range(0)), 0.8, 10.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(zipf_popularity(cfg));
    }
}
BENCHMARK(BM_ZipfPopularity)->Arg(30)->Arg(1000);

static void BM_SampleRequestsInstant(benchmark::State& state) {
    SimConfig cfg;
    const World world = build_world(cfg);
    Rng rng(1);
    std::uint64_t t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_requests(world.profiles, ++t, cfg.dt_s, rng));
    }
}
BENCHMARK(BM_SampleRequestsInstant);

static void BM_GibbsDistribution(benchmark::State& state) {
    std::vector<double> regrets(static_cast<std::size_t>(state.range(0)));
    Rng rng(2);
    for (double& r : regrets) r = 100.0 * rng.uniform();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gibbs_distribution(regrets, 20.0));
    }
}
BENCHMARK(BM_GibbsDistribution)->Arg(30)->Arg(300);

static void BM_UpdateLearner(benchmark::State& state) {
    const LearningSchedule schedule;
    LearnerState s = LearnerState::make(30, 20.0);
    Rng rng(3);
    for (auto _ : state) {
        update_learner(s, rng.uniform_index(30), 40.0 * rng.uniform(), schedule);
    }
}
BENCHMARK(BM_UpdateLearner);

static void BM_ClusterUsers(benchmark::State& state) {
    Rng rng(4);
    const auto weights = zipf_popularity({30, 0.6, 1.0});
    std::vector<RequestHistogram> histograms;
    for (int u = 0; u < 15; ++u) {
        RequestHistogram h(30, 0);
        for (int k = 0; k < 200; ++k) ++h[sample_discrete(weights, rng.uniform())];
        histograms.push_back(h);
    }
    const ClusteringConfig cfg;
    for (auto _ : state) {
        Rng crng(5);
        benchmark::DoNotOptimize(cluster_users(histograms, cfg, crng));
    }
}
BENCHMARK(BM_ClusterUsers);

static void BM_ServingInstant(benchmark::State& state) {
    SimConfig cfg;
    cfg.training_instants = 50;
    cfg.training_min_requests = 0;
    const World world = build_world(cfg);
    const Rng episode_rng(cfg.master_seed);
    Rng traffic = episode_rng.child(4), clustering = episode_rng.child(5);
    const TrainingResult training = run_training_phase(cfg, world, traffic, clustering);
    ServingState serving = init_serving(cfg, world, training.association, episode_rng);
    Rng serving_rng = episode_rng.child(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step_serving(cfg, world, serving, serving_rng));
    }
}
BENCHMARK(BM_ServingInstant);

BENCHMARK_MAIN();
