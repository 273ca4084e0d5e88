#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cellcache/config.hpp"
#include "cellcache/simulator.hpp"

namespace cellcache {

struct EpisodeRow {
    Scheme scheme = Scheme::proposed;
    double zipf_exponent = 0.0;
    std::size_t capacity = 0;
    std::uint64_t seed = 0;
    MetricsRecord metrics;
};

/// Runs the Cartesian product zipf x capacity x scheme x seed. Episodes are
/// independent and may run on up to `jobs` threads; rows always come back in
/// grid order, so output is deterministic regardless of scheduling.
std::vector<EpisodeRow> run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// Number serialization used in every CSV: 9 significant digits, '.' decimal
/// separator, infinities as "inf"/"-inf".
std::string format_double(double v);

std::string raw_csv(const std::vector<EpisodeRow>& rows);

struct AggregateCell {
    Scheme scheme = Scheme::proposed;
    double zipf_exponent = 0.0;
    std::size_t capacity = 0;
    std::size_t n_seeds = 0;
    double delay_mean = 0.0, delay_stderr = 0.0;
    double offloading_mean = 0.0, offloading_stderr = 0.0;
    double hit_rate_mean = 0.0, hit_rate_stderr = 0.0;
};

/// Per-(zipf, capacity, scheme) mean and standard error across seeds, in the
/// raw rows' cell order.
std::vector<AggregateCell> aggregate(const std::vector<EpisodeRow>& rows);

std::string aggregate_csv(const std::vector<AggregateCell>& cells);

/// Long-format plot data: (x_value, scheme, mean, stderr) with x = the Zipf
/// exponent for figures 2-3 and the storage capacity for figures 4-5; the
/// metric is delay for figures 2 and 4 and offloading gain for 3 and 5.
/// Throws MissingAxisError when the table was not swept along the requested
/// axis (or is ambiguous along the other one).
std::string figure_csv(const std::vector<EpisodeRow>& rows, int figure);

/// Reads back a raw results CSV produced by raw_csv.
std::vector<EpisodeRow> parse_raw_csv(std::string_view text);

}  // namespace cellcache
