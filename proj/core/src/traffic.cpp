#include "cellcache/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cellcache/errors.hpp"

namespace cellcache {

void ZipfConfig::validate() const {
    if (num_contents < 1) throw InvalidConfig("num_contents must be >= 1");
    if (zipf_exponent < 0.0) throw InvalidConfig("zipf_exponent must be >= 0");
    if (!(mean_popularity > 0.0)) throw InvalidConfig("mean_popularity must be > 0");
}

std::vector<double> zipf_popularity(const ZipfConfig& cfg) {
    cfg.validate();
    std::vector<double> weights(cfg.num_contents);
    double norm = 0.0;
    for (std::size_t i = 0; i < cfg.num_contents; ++i) {
        weights[i] = std::pow(static_cast<double>(i + 1), -cfg.zipf_exponent);
        norm += weights[i];
    }
    for (double& w : weights) w = w / norm * cfg.mean_popularity;
    return weights;
}

ContentCatalog make_catalog(const ZipfConfig& cfg, double content_size_bits) {
    if (!(content_size_bits > 0.0)) throw InvalidConfig("content_size_bits must be > 0");
    ContentCatalog catalog;
    catalog.base_popularity = zipf_popularity(cfg);
    catalog.sizes_bits.assign(cfg.num_contents, content_size_bits);
    return catalog;
}

std::vector<UserProfile> make_user_profiles(std::size_t num_types,
                                            std::span<const UserPlacement> users,
                                            const ContentCatalog& catalog, Rng& rng,
                                            TypePermutations scheme) {
    if (num_types < 1) throw InvalidConfig("num_types must be >= 1");
    const std::size_t C = catalog.size();

    // Type 0 keeps the identity permutation.
    std::vector<std::vector<std::size_t>> perms(num_types);
    for (std::size_t t = 0; t < num_types; ++t) {
        perms[t].resize(C);
        std::iota(perms[t].begin(), perms[t].end(), std::size_t{0});
        if (t == 0) continue;
        if (scheme == TypePermutations::random) {
            rng.shuffle(perms[t]);
        } else {
            const std::size_t stride = std::max<std::size_t>(C / num_types, 1);
            for (std::size_t i = 0; i < C; ++i) perms[t][i] = (i + t * stride) % C;
        }
    }

    std::vector<UserProfile> profiles;
    profiles.reserve(users.size());
    for (std::size_t u = 0; u < users.size(); ++u) {
        UserProfile p;
        p.user_id = u;
        p.user_type = u % num_types;
        p.position = users[u].position;
        p.is_macro_user = users[u].is_macro_user;
        p.arrival_rates.resize(C);
        for (std::size_t c = 0; c < C; ++c) {
            p.arrival_rates[c] = catalog.base_popularity[perms[p.user_type][c]];
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<RequestEvent> sample_requests(std::span<const UserProfile> profiles,
                                          std::uint64_t time_instant, double dt_s, Rng& rng) {
    std::vector<RequestEvent> events;
    for (const UserProfile& p : profiles) {
        for (std::size_t c = 0; c < p.arrival_rates.size(); ++c) {
            const double u = rng.uniform();
            if (u < p.arrival_rates[c] * dt_s) {
                events.push_back(RequestEvent{time_instant, p.user_id, c});
            }
        }
    }
    return events;
}

}  // namespace cellcache
