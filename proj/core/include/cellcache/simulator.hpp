#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellcache/cache.hpp"
#include "cellcache/clustering.hpp"
#include "cellcache/learning.hpp"
#include "cellcache/radio.hpp"
#include "cellcache/traffic.hpp"

namespace cellcache {

enum class Scheme { proposed, unclustered_learning, random_caching };

std::string to_string(Scheme s);
std::optional<Scheme> scheme_from_string(const std::string& name);

enum class InterferenceMode { orthogonal, cochannel };

struct SimConfig {
    ZipfConfig zipf;
    double content_size_bits = 1e6;

    GeometryParams geometry;
    InterferenceMode interference = InterferenceMode::orthogonal;

    std::size_t num_sues = 15;
    std::size_t num_mues = 50;
    std::size_t num_user_types = 3;
    TypePermutations type_permutations = TypePermutations::shifted;

    Scheme scheme = Scheme::proposed;
    double dt_s = 0.025;
    std::uint64_t training_instants = 500;
    std::uint64_t training_min_requests = 250;  // extend training until every SUE has this many
    std::uint64_t serving_instants = 160000;
    std::size_t storage_capacity_files = 10;
    double delay_cap_s = 10.0;

    LearningSchedule schedule;
    double boltzmann_beta = 20.0;
    double removal_beta_numerator = 10.0;

    ClusteringConfig clustering;

    std::uint64_t master_seed = 1;

    void validate() const;
    std::vector<std::string> warnings() const;
};

/// Everything about an episode that is fixed before the training phase:
/// catalog, geometry, user profiles and per-link spectral efficiencies.
struct World {
    ContentCatalog catalog;
    NetworkGeometry geometry;
    std::vector<UserProfile> profiles;  // SUEs first, then MUEs
    std::size_t num_sues = 0;
    // spectral_efficiency[user][bs] = log2(1 + SINR), bs 0 is the MBS.
    std::vector<std::vector<double>> spectral_efficiency;

    std::span<const UserProfile> sues() const {
        return std::span<const UserProfile>(profiles.data(), num_sues);
    }
};

World build_world(const SimConfig& cfg);

struct TrainingResult {
    std::vector<RequestHistogram> histograms;  // one per SUE
    Association association;
    ClusterResult clusters;  // empty for the baseline schemes
    std::uint64_t instants_run = 0;
};

/// Requests accumulate into per-SUE histograms while everyone is served via
/// highest-RSSI association with cold caches. Runs for training_instants and
/// then keeps going until every SUE logged training_min_requests requests.
/// The proposed scheme then clusters and re-associates; the baselines keep
/// the RSSI association.
TrainingResult run_training_phase(const SimConfig& cfg, const World& world, Rng& traffic_rng,
                                  Rng& clustering_rng);

struct MetricsRecord {
    double average_service_delay_s = 0.0;
    double offloading_gain = 0.0;  // +infinity when the MBS served no SUE bits
    double cache_hit_rate = 0.0;
    std::uint64_t requests_served = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t mbs_served = 0;
};

struct ServingState {
    Association association;
    std::vector<CacheState> caches;     // one per SCBS
    std::vector<LearnerState> learners; // one per SCBS (learning schemes)
    std::vector<Rng> scbs_rngs;
    std::uint64_t t = 1;

    double delay_sum_s = 0.0;
    std::uint64_t requests_served = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t mbs_served = 0;
    double scbs_bits = 0.0;
    double mbs_bits = 0.0;
};

ServingState init_serving(const SimConfig& cfg, const World& world, Association association,
                          const Rng& episode_rng);

struct InstantStats {
    std::uint64_t sue_requests = 0;
    std::uint64_t hits = 0;
    double delay_sum_s = 0.0;
    // per-SCBS: action played this instant and the observed utility
    // (NaN on idle instants or under random caching)
    std::vector<std::size_t> played;
    std::vector<double> utilities;
};

/// One serving instant: cache actions, request arrivals, service with
/// per-instant equal bandwidth split, frequency bookkeeping, learner update.
InstantStats step_serving(const SimConfig& cfg, const World& world, ServingState& state,
                          Rng& traffic_rng);

MetricsRecord finalize_metrics(const ServingState& state);

/// Convergence-trace row for one SCBS at one instant.
struct TraceRow {
    std::uint64_t t = 0;
    std::size_t scbs = 0;  // 1..B
    std::size_t action = 0;
    double utility = 0.0;  // NaN when no requests arrived
    double max_regret = 0.0;
    std::uint64_t requests = 0;
    std::uint64_t hits = 0;
};

/// Builds the world from the master seed, trains, serves, aggregates.
/// Optional outputs: the training result (histograms, clusters, association)
/// and a per-instant, per-SCBS convergence trace.
MetricsRecord run_episode(const SimConfig& cfg, TrainingResult* training_out,
                          std::vector<TraceRow>* trace_out);

MetricsRecord run_episode(const SimConfig& cfg);

/// Training-phase clustering accuracy against the ground-truth user types:
/// best injective assignment of clusters to types. 1.0 when every labeled
/// SUE lands with its own type.
double clustering_accuracy(const ClusterResult& clusters, std::span<const UserProfile> sues);

}  // namespace cellcache
