#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cellcache/rng.hpp"

namespace cellcache {

/// Per-SCBS content store. Tracks cached contents, the bits they occupy and
/// per-content request frequencies; total cached bits never exceed the
/// capacity.
class CacheState {
public:
    CacheState(double capacity_bits, std::size_t num_contents, double removal_beta_numerator);

    bool contains(std::size_t content) const { return cached_[content] != 0; }

    void record_request(std::size_t content) { ++request_counts_[content]; }

    /// Cached content ids in ascending order.
    const std::vector<std::size_t>& cached_ids() const { return cached_list_; }

    /// Removal distribution over cached_ids(): probability of a cached item
    /// decays exponentially in its request count with temperature
    /// removal_beta_numerator / t, so rarely requested contents go first.
    /// Overflow-safe. Throws EmptyCacheError when nothing is cached.
    std::vector<double> eviction_distribution(std::uint64_t t) const;

    struct InsertReport {
        bool inserted = false;
        std::vector<std::size_t> evicted;
    };

    /// No-op when already cached; otherwise evicts via eviction_distribution
    /// until the new content fits, then inserts it. Throws
    /// ContentTooLargeError when the content alone exceeds the capacity.
    InsertReport insert_with_eviction(std::size_t content, std::uint64_t t,
                                      std::span<const double> sizes_bits, Rng& rng);

    /// Same bookkeeping with uniform eviction (the random-caching baseline).
    InsertReport insert_with_uniform_eviction(std::size_t content,
                                              std::span<const double> sizes_bits, Rng& rng);

    double capacity_bits() const { return capacity_bits_; }
    double used_bits() const { return used_bits_; }
    std::size_t num_cached() const { return cached_list_.size(); }
    const std::vector<std::uint64_t>& request_counts() const { return request_counts_; }
    double removal_beta_numerator() const { return removal_beta_numerator_; }

private:
    void evict_index(std::size_t list_index, std::span<const double> sizes_bits);

    double capacity_bits_;
    double used_bits_ = 0.0;
    double removal_beta_numerator_;
    std::vector<char> cached_;
    std::vector<std::size_t> cached_list_;  // ascending content ids
    std::vector<std::uint64_t> request_counts_;
};

}  // namespace cellcache
