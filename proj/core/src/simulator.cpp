#include "cellcache/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "cellcache/errors.hpp"

namespace cellcache {

namespace {

// Stream tags for per-episode child rngs.
constexpr std::uint64_t kGeometryStream = 1;
constexpr std::uint64_t kPlacementStream = 2;
constexpr std::uint64_t kProfileStream = 3;
constexpr std::uint64_t kTrainingTrafficStream = 4;
constexpr std::uint64_t kClusteringStream = 5;
constexpr std::uint64_t kServingTrafficStream = 6;
constexpr std::uint64_t kScbsStreamBase = 100;

constexpr std::uint64_t kTrainingHardCap = 2'000'000;

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::unclustered_learning: return "unclustered-learning";
        case Scheme::random_caching: return "random-caching";
    }
    return "?";
}

std::optional<Scheme> scheme_from_string(const std::string& name) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "unclustered-learning") return Scheme::unclustered_learning;
    if (name == "random-caching") return Scheme::random_caching;
    return std::nullopt;
}

void SimConfig::validate() const {
    zipf.validate();
    geometry.validate();
    schedule.validate();
    if (!(content_size_bits > 0.0)) throw InvalidConfig("content_size_bits must be > 0");
    if (num_sues == 0) throw InvalidConfig("num_sues must be >= 1");
    if (num_user_types == 0) throw InvalidConfig("num_user_types must be >= 1");
    if (!(dt_s > 0.0)) throw InvalidConfig("dt_s must be > 0");
    if (serving_instants == 0) throw InvalidConfig("serving_instants must be >= 1");
    if (training_instants == 0) throw InvalidConfig("training_instants must be >= 1");
    if (storage_capacity_files == 0) throw InvalidConfig("storage_capacity_files must be >= 1");
    if (storage_capacity_files > zipf.num_contents)
        throw InvalidConfig("storage_capacity_files cannot exceed num_contents");
    if (!(delay_cap_s > 0.0)) throw InvalidConfig("delay_cap_s must be > 0");
    if (!(boltzmann_beta >= 0.0)) throw InvalidConfig("boltzmann_beta must be >= 0");
    if (removal_beta_numerator < 0.0)
        throw InvalidConfig("removal_beta_numerator must be >= 0");
    // Bernoulli thinning needs per-instant probabilities at most 1.
    const std::vector<double> pop = zipf_popularity(zipf);
    if (pop.front() * dt_s > 1.0)
        throw InvalidConfig("top content rate times dt_s exceeds 1; reduce dt_s");
}

std::vector<std::string> SimConfig::warnings() const {
    std::vector<std::string> out = schedule.warnings();
    const std::vector<double> pop = zipf_popularity(zipf);
    const double max_p = pop.front() * dt_s;
    if (max_p > 0.1) {
        out.push_back("per-instant request probability " + std::to_string(max_p) +
                      " exceeds 0.1; Bernoulli thinning of the Poisson arrivals "
                      "becomes coarse (reduce dt_s)");
    }
    return out;
}

World build_world(const SimConfig& cfg) {
    cfg.validate();
    const Rng episode_rng(cfg.master_seed);

    World world;
    world.catalog = make_catalog(cfg.zipf, cfg.content_size_bits);

    Rng geometry_rng = episode_rng.child(kGeometryStream);
    world.geometry = build_geometry(cfg.geometry, geometry_rng);

    Rng placement_rng = episode_rng.child(kPlacementStream);
    const std::vector<Vec2> sue_pos =
        place_small_cell_users(world.geometry, cfg.num_sues, placement_rng);
    const std::vector<Vec2> mue_pos =
        place_macro_users(world.geometry, cfg.num_mues, placement_rng);

    std::vector<UserPlacement> placements;
    placements.reserve(cfg.num_sues + cfg.num_mues);
    for (const Vec2& p : sue_pos) placements.push_back(UserPlacement{p, false});
    for (const Vec2& p : mue_pos) placements.push_back(UserPlacement{p, true});

    Rng profile_rng = episode_rng.child(kProfileStream);
    world.profiles = make_user_profiles(cfg.num_user_types, placements, world.catalog,
                                        profile_rng, cfg.type_permutations);
    world.num_sues = cfg.num_sues;

    const std::size_t num_bs = world.geometry.bs_list.size();
    world.spectral_efficiency.assign(world.profiles.size(), std::vector<double>(num_bs, 0.0));
    for (std::size_t u = 0; u < world.profiles.size(); ++u) {
        for (std::size_t b = 0; b < num_bs; ++b) {
            const double sinr =
                cfg.interference == InterferenceMode::cochannel
                    ? sinr_linear(b, world.profiles[u].position, world.geometry)
                    : snr_linear(world.geometry.bs_list[b], world.profiles[u].position,
                                 world.geometry);
            world.spectral_efficiency[u][b] = std::log2(1.0 + sinr);
        }
    }
    return world;
}

TrainingResult run_training_phase(const SimConfig& cfg, const World& world, Rng& traffic_rng,
                                  Rng& clustering_rng) {
    TrainingResult result;
    result.histograms.assign(world.num_sues,
                             RequestHistogram(world.catalog.size(), 0));

    // All requests go to the highest-RSSI SCBS over cold caches, so only the
    // per-SUE histograms are observable here.
    std::uint64_t t = 0;
    const auto min_count = [&result]() {
        std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
        for (const RequestHistogram& h : result.histograms) {
            m = std::min(m, std::accumulate(h.begin(), h.end(), std::uint64_t{0}));
        }
        return m;
    };
    while (t < cfg.training_instants ||
           (cfg.training_min_requests > 0 && min_count() < cfg.training_min_requests)) {
        ++t;
        if (t > kTrainingHardCap)
            throw InvalidConfig("training did not reach training_min_requests within " +
                                std::to_string(kTrainingHardCap) + " instants");
        const std::vector<RequestEvent> events =
            sample_requests(world.profiles, t, cfg.dt_s, traffic_rng);
        for (const RequestEvent& e : events) {
            if (e.user_id < world.num_sues) ++result.histograms[e.user_id][e.content_id];
        }
    }
    result.instants_run = t;

    std::vector<Vec2> sue_positions(world.num_sues);
    for (std::size_t u = 0; u < world.num_sues; ++u) sue_positions[u] = world.profiles[u].position;

    if (cfg.scheme == Scheme::proposed) {
        ClusteringConfig ccfg = cfg.clustering;
        result.clusters = cluster_users(result.histograms, ccfg, clustering_rng);
        result.association =
            associate_clusters(result.clusters, result.histograms, sue_positions, world.geometry);
    } else {
        result.association = associate_by_rssi(sue_positions, world.geometry);
    }
    return result;
}

ServingState init_serving(const SimConfig& cfg, const World& world, Association association,
                          const Rng& episode_rng) {
    ServingState state;
    state.association = std::move(association);
    const std::size_t B = world.geometry.num_scbs();
    const double capacity_bits =
        static_cast<double>(cfg.storage_capacity_files) * cfg.content_size_bits;
    for (std::size_t b = 0; b < B; ++b) {
        state.caches.emplace_back(capacity_bits, world.catalog.size(),
                                  cfg.removal_beta_numerator);
        state.learners.push_back(LearnerState::make(world.catalog.size(), cfg.boltzmann_beta));
        state.scbs_rngs.push_back(episode_rng.child(kScbsStreamBase + b));
    }
    state.t = 1;
    return state;
}

InstantStats step_serving(const SimConfig& cfg, const World& world, ServingState& state,
                          Rng& traffic_rng) {
    const std::size_t B = world.geometry.num_scbs();
    const std::size_t mbs = 0;
    const std::uint64_t t = state.t;
    InstantStats stats;

    // 1. Cache actions.
    std::vector<std::size_t>& played = stats.played;
    played.assign(B, 0);
    for (std::size_t b = 0; b < B; ++b) {
        Rng& rng = state.scbs_rngs[b];
        if (cfg.scheme == Scheme::random_caching) {
            const std::size_t c = rng.uniform_index(world.catalog.size());
            state.caches[b].insert_with_uniform_eviction(c, world.catalog.sizes_bits, rng);
        } else {
            const std::size_t c = select_action(state.learners[b], rng);
            played[b] = c;
            state.caches[b].insert_with_eviction(c, t, world.catalog.sizes_bits, rng);
        }
    }

    // 2. Arrivals.
    const std::vector<RequestEvent> events =
        sample_requests(world.profiles, t, cfg.dt_s, traffic_rng);

    // 3. Serving decision and bandwidth dividers. bs 0 is the MBS.
    struct Pending {
        std::size_t user;
        std::size_t content;
        std::size_t bs;
        bool is_sue;
    };
    std::vector<Pending> pending;
    pending.reserve(events.size());
    std::vector<std::uint64_t> requests_at_bs(B + 1, 0);
    for (const RequestEvent& e : events) {
        if (e.user_id < world.num_sues) {
            const std::size_t scbs = state.association.scbs_of_sue[e.user_id];
            const bool hit = state.caches[scbs - 1].contains(e.content_id);
            const std::size_t serving_bs = hit ? scbs : mbs;
            ++requests_at_bs[serving_bs];
            pending.push_back(Pending{e.user_id, e.content_id, serving_bs, true});
            state.caches[scbs - 1].record_request(e.content_id);
        } else {
            ++requests_at_bs[mbs];
            pending.push_back(Pending{e.user_id, e.content_id, mbs, false});
        }
    }

    // 4. Delays under the per-instant equal split of each station's band.
    std::vector<double> delay_by_scbs(B, 0.0);
    for (const Pending& p : pending) {
        if (!p.is_sue) continue;  // macro users only load the MBS divider
        const BaseStation& bs = world.geometry.bs_list[p.bs];
        const double share =
            bs.bandwidth_hz / static_cast<double>(requests_at_bs[p.bs]);
        const double rate = share * world.spectral_efficiency[p.user][p.bs];
        const std::optional<double> raw =
            service_delay_s(world.catalog.sizes_bits[p.content], rate);
        const double delay = std::min(raw.value_or(cfg.delay_cap_s), cfg.delay_cap_s);

        stats.delay_sum_s += delay;
        ++stats.sue_requests;
        state.delay_sum_s += delay;
        ++state.requests_served;
        const std::size_t home_scbs = state.association.scbs_of_sue[p.user];
        delay_by_scbs[home_scbs - 1] += delay;
        if (p.bs == mbs) {
            ++state.mbs_served;
            state.mbs_bits += world.catalog.sizes_bits[p.content];
        } else {
            ++state.cache_hits;
            ++stats.hits;
            state.scbs_bits += world.catalog.sizes_bits[p.content];
        }
    }

#ifndef NDEBUG
    for (std::size_t b = 0; b < B; ++b) {
        assert(state.caches[b].used_bits() <= state.caches[b].capacity_bits() + 1e-9);
    }
#endif

    // 5. Learner update with the reciprocal of this instant's summed delay;
    // idle SCBSs only advance the strategy recursion.
    stats.utilities.assign(B, std::numeric_limits<double>::quiet_NaN());
    if (cfg.scheme != Scheme::random_caching) {
        for (std::size_t b = 0; b < B; ++b) {
            std::optional<double> utility;
            if (delay_by_scbs[b] > 0.0) utility = 1.0 / delay_by_scbs[b];
            if (utility) stats.utilities[b] = *utility;
            update_learner(state.learners[b], played[b], utility, cfg.schedule);
        }
    }

    ++state.t;
    return stats;
}

MetricsRecord finalize_metrics(const ServingState& state) {
    MetricsRecord m;
    m.requests_served = state.requests_served;
    m.cache_hits = state.cache_hits;
    m.mbs_served = state.mbs_served;
    assert(state.requests_served == state.cache_hits + state.mbs_served);
    m.average_service_delay_s =
        state.requests_served > 0 ? state.delay_sum_s / static_cast<double>(state.requests_served)
                                  : 0.0;
    m.cache_hit_rate = state.requests_served > 0
                           ? static_cast<double>(state.cache_hits) /
                                 static_cast<double>(state.requests_served)
                           : 0.0;
    m.offloading_gain = state.mbs_bits > 0.0
                            ? state.scbs_bits / state.mbs_bits
                            : std::numeric_limits<double>::infinity();
    return m;
}

MetricsRecord run_episode(const SimConfig& cfg, TrainingResult* training_out,
                          std::vector<TraceRow>* trace_out) {
    const World world = build_world(cfg);
    const Rng episode_rng(cfg.master_seed);

    Rng training_rng = episode_rng.child(kTrainingTrafficStream);
    Rng clustering_rng = episode_rng.child(kClusteringStream);
    TrainingResult training = run_training_phase(cfg, world, training_rng, clustering_rng);

    ServingState state = init_serving(cfg, world, training.association, episode_rng);
    Rng serving_rng = episode_rng.child(kServingTrafficStream);
    for (std::uint64_t t = 0; t < cfg.serving_instants; ++t) {
        const InstantStats stats = step_serving(cfg, world, state, serving_rng);
        if (trace_out) {
            for (std::size_t b = 0; b < world.geometry.num_scbs(); ++b) {
                TraceRow row;
                row.t = t + 1;
                row.scbs = b + 1;
                row.action = stats.played.empty() ? 0 : stats.played[b];
                row.utility = stats.utilities.empty()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : stats.utilities[b];
                double max_regret = 0.0;
                if (cfg.scheme != Scheme::random_caching) {
                    max_regret = *std::max_element(state.learners[b].regrets.begin(),
                                                   state.learners[b].regrets.end());
                }
                row.max_regret = max_regret;
                row.requests = stats.sue_requests;
                row.hits = stats.hits;
                trace_out->push_back(row);
            }
        }
    }
    if (training_out) *training_out = std::move(training);
    return finalize_metrics(state);
}

MetricsRecord run_episode(const SimConfig& cfg) { return run_episode(cfg, nullptr, nullptr); }

double clustering_accuracy(const ClusterResult& clusters, std::span<const UserProfile> sues) {
    if (sues.empty()) return 0.0;
    std::size_t num_types = 0;
    for (const UserProfile& u : sues) num_types = std::max(num_types, u.user_type + 1);
    const std::size_t k = std::max<std::size_t>(clusters.num_clusters, 1);

    // Confusion counts cluster x type.
    std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(num_types, 0));
    for (std::size_t u = 0; u < sues.size(); ++u) {
        if (clusters.labels[u] >= 0) {
            ++counts[static_cast<std::size_t>(clusters.labels[u])][sues[u].user_type];
        }
    }

    // Best injective assignment of types to distinct clusters (small sizes,
    // exhaustive over cluster permutations).
    std::vector<std::size_t> perm(std::max(k, num_types));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t best = 0;
    do {
        std::size_t matched = 0;
        for (std::size_t type = 0; type < num_types; ++type) {
            const std::size_t cluster = perm[type];
            if (cluster < k) matched += counts[cluster][type];
        }
        best = std::max(best, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(sues.size());
}

}  // namespace cellcache
