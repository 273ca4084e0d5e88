#include "cellcache/cache.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellcache/errors.hpp"

namespace cellcache {

CacheState::CacheState(double capacity_bits, std::size_t num_contents,
                       double removal_beta_numerator)
    : capacity_bits_(capacity_bits),
      removal_beta_numerator_(removal_beta_numerator),
      cached_(num_contents, 0),
      request_counts_(num_contents, 0) {
    if (!(capacity_bits > 0.0)) throw InvalidConfig("cache capacity must be > 0 bits");
    if (removal_beta_numerator < 0.0)
        throw InvalidConfig("removal_beta_numerator must be >= 0");
}

std::vector<double> CacheState::eviction_distribution(std::uint64_t t) const {
    if (cached_list_.empty()) throw EmptyCacheError();
    const double beta = removal_beta_numerator_ / static_cast<double>(t);

    std::uint64_t min_count = request_counts_[cached_list_.front()];
    for (std::size_t c : cached_list_) min_count = std::min(min_count, request_counts_[c]);

    std::vector<double> out(cached_list_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < cached_list_.size(); ++i) {
        // exp(-beta * (n_c - n_min)) keeps the exponent non-positive.
        const double excess =
            static_cast<double>(request_counts_[cached_list_[i]] - min_count);
        out[i] = std::exp(-beta * excess);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

void CacheState::evict_index(std::size_t list_index, std::span<const double> sizes_bits) {
    const std::size_t content = cached_list_[list_index];
    cached_[content] = 0;
    used_bits_ -= sizes_bits[content];
    cached_list_.erase(cached_list_.begin() + static_cast<std::ptrdiff_t>(list_index));
}

CacheState::InsertReport CacheState::insert_with_eviction(std::size_t content, std::uint64_t t,
                                                          std::span<const double> sizes_bits,
                                                          Rng& rng) {
    InsertReport report;
    if (contains(content)) return report;
    const double size = sizes_bits[content];
    if (size > capacity_bits_) {
        throw ContentTooLargeError("content " + std::to_string(content) +
                                   " does not fit an empty cache");
    }
    while (used_bits_ + size > capacity_bits_) {
        const std::vector<double> dist = eviction_distribution(t);
        const std::size_t idx = sample_discrete(dist, rng.uniform());
        report.evicted.push_back(cached_list_[idx]);
        evict_index(idx, sizes_bits);
    }
    cached_[content] = 1;
    used_bits_ += size;
    cached_list_.insert(std::lower_bound(cached_list_.begin(), cached_list_.end(), content),
                        content);
    report.inserted = true;
    return report;
}

CacheState::InsertReport CacheState::insert_with_uniform_eviction(
    std::size_t content, std::span<const double> sizes_bits, Rng& rng) {
    InsertReport report;
    if (contains(content)) return report;
    const double size = sizes_bits[content];
    if (size > capacity_bits_) {
        throw ContentTooLargeError("content " + std::to_string(content) +
                                   " does not fit an empty cache");
    }
    while (used_bits_ + size > capacity_bits_) {
        if (cached_list_.empty()) throw EmptyCacheError();
        const std::size_t idx = rng.uniform_index(cached_list_.size());
        report.evicted.push_back(cached_list_[idx]);
        evict_index(idx, sizes_bits);
    }
    cached_[content] = 1;
    used_bits_ += size;
    cached_list_.insert(std::lower_bound(cached_list_.begin(), cached_list_.end(), content),
                        content);
    report.inserted = true;
    return report;
}

}  // namespace cellcache
