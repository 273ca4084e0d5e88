#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cellcache/rng.hpp"

namespace cellcache {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct ZipfConfig {
    std::size_t num_contents = 30;
    double zipf_exponent = 0.6;
    double mean_popularity = 10.0;  // requests/second, total per user

    void validate() const;
};

/// Rank-based popularity: rate of the i-th content is proportional to
/// i^-zipf_exponent (i from 1) and the vector sums to mean_popularity.
std::vector<double> zipf_popularity(const ZipfConfig& cfg);

struct ContentCatalog {
    std::vector<double> sizes_bits;
    std::vector<double> base_popularity;  // non-increasing, sums to mean_popularity

    std::size_t size() const { return sizes_bits.size(); }
};

ContentCatalog make_catalog(const ZipfConfig& cfg, double content_size_bits);

struct UserProfile {
    std::size_t user_id = 0;
    std::size_t user_type = 0;
    Vec2 position;
    std::vector<double> arrival_rates;  // permutation of base_popularity
    bool is_macro_user = false;
};

struct UserPlacement {
    Vec2 position;
    bool is_macro_user = false;
};

/// How the per-type content permutations are built. `shifted` rotates the
/// popularity ranking by an equal stride per type, so the types' top
/// contents are disjoint blocks and the separation between types does not
/// depend on the seed; `random` draws each permutation uniformly.
enum class TypePermutations { shifted, random };

/// One profile per placement, in order. Types are assigned round-robin by
/// user id. Every type gets its own content permutation; type 0 keeps the
/// identity order so a single-type run reduces to the plain Zipf model.
std::vector<UserProfile> make_user_profiles(std::size_t num_types,
                                            std::span<const UserPlacement> users,
                                            const ContentCatalog& catalog, Rng& rng,
                                            TypePermutations scheme = TypePermutations::shifted);

struct RequestEvent {
    std::uint64_t time_instant = 0;
    std::size_t user_id = 0;
    std::size_t content_id = 0;
};

/// Per-instant Bernoulli thinning of each (user, content) Poisson process:
/// a request is emitted with probability rate*dt, independently. Output is
/// ordered by (user_id, content_id). One uniform is consumed per pair so the
/// stream layout does not depend on the rates.
std::vector<RequestEvent> sample_requests(std::span<const UserProfile> profiles,
                                          std::uint64_t time_instant, double dt_s, Rng& rng);

}  // namespace cellcache
