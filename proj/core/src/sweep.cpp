#include "cellcache/sweep.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cellcache/errors.hpp"

namespace cellcache {

std::vector<EpisodeRow> run_sweep(const SweepSpec& spec, unsigned jobs) {
    spec.validate();

    std::vector<EpisodeRow> rows;
    for (double zipf : spec.zipf_values)
        for (std::size_t capacity : spec.capacity_values)
            for (Scheme scheme : spec.schemes)
                for (std::uint64_t seed : spec.seeds)
                    rows.push_back(EpisodeRow{scheme, zipf, capacity, seed, {}});

    const auto run_one = [&spec](EpisodeRow& row) {
        SimConfig cfg = spec.base;
        cfg.zipf.zipf_exponent = row.zipf_exponent;
        cfg.storage_capacity_files = row.capacity;
        cfg.scheme = row.scheme;
        cfg.master_seed = row.seed;
        try {
            row.metrics = run_episode(cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("episode (" + to_string(row.scheme) +
                                     ", zipf " + format_double(row.zipf_exponent) +
                                     ", capacity " + std::to_string(row.capacity) + ", seed " +
                                     std::to_string(row.seed) + ") failed: " + e.what());
        }
    };

    if (jobs <= 1 || rows.size() <= 1) {
        for (EpisodeRow& row : rows) run_one(row);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(rows.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= rows.size()) return;
                try {
                    run_one(rows[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string raw_csv(const std::vector<EpisodeRow>& rows) {
    std::string out =
        "scheme,zipf_exponent,capacity,seed,avg_delay_s,offloading_gain,hit_rate,requests_served\n";
    for (const EpisodeRow& r : rows) {
        out += to_string(r.scheme);
        out += ',';
        out += format_double(r.zipf_exponent);
        out += ',';
        out += std::to_string(r.capacity);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.metrics.average_service_delay_s);
        out += ',';
        out += format_double(r.metrics.offloading_gain);
        out += ',';
        out += format_double(r.metrics.cache_hit_rate);
        out += ',';
        out += std::to_string(r.metrics.requests_served);
        out += '\n';
    }
    return out;
}

namespace {

struct CellKey {
    double zipf;
    std::size_t capacity;
    Scheme scheme;
    bool operator<(const CellKey& o) const {
        if (zipf != o.zipf) return zipf < o.zipf;
        if (capacity != o.capacity) return capacity < o.capacity;
        return static_cast<int>(scheme) < static_cast<int>(o.scheme);
    }
};

struct Moments {
    std::size_t n = 0;
    double sum = 0.0, sum_sq = 0.0;
    void add(double v) { ++n; sum += v; sum_sq += v * v; }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double stderr_() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) /
                                             static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

}  // namespace

std::vector<AggregateCell> aggregate(const std::vector<EpisodeRow>& rows) {
    std::vector<CellKey> order;
    std::map<CellKey, std::array<Moments, 3>> cells;
    for (const EpisodeRow& r : rows) {
        const CellKey key{r.zipf_exponent, r.capacity, r.scheme};
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second[0].add(r.metrics.average_service_delay_s);
        it->second[1].add(r.metrics.offloading_gain);
        it->second[2].add(r.metrics.cache_hit_rate);
    }
    std::vector<AggregateCell> out;
    out.reserve(order.size());
    for (const CellKey& key : order) {
        const auto& m = cells[key];
        AggregateCell cell;
        cell.scheme = key.scheme;
        cell.zipf_exponent = key.zipf;
        cell.capacity = key.capacity;
        cell.n_seeds = m[0].n;
        cell.delay_mean = m[0].mean();
        cell.delay_stderr = m[0].stderr_();
        cell.offloading_mean = m[1].mean();
        cell.offloading_stderr = m[1].stderr_();
        cell.hit_rate_mean = m[2].mean();
        cell.hit_rate_stderr = m[2].stderr_();
        out.push_back(cell);
    }
    return out;
}

std::string aggregate_csv(const std::vector<AggregateCell>& cells) {
    std::string out =
        "scheme,zipf_exponent,capacity,n_seeds,avg_delay_s_mean,avg_delay_s_stderr,"
        "offloading_gain_mean,offloading_gain_stderr,hit_rate_mean,hit_rate_stderr\n";
    for (const AggregateCell& c : cells) {
        out += to_string(c.scheme);
        out += ',';
        out += format_double(c.zipf_exponent);
        out += ',';
        out += std::to_string(c.capacity);
        out += ',';
        out += std::to_string(c.n_seeds);
        out += ',';
        out += format_double(c.delay_mean);
        out += ',';
        out += format_double(c.delay_stderr);
        out += ',';
        out += format_double(c.offloading_mean);
        out += ',';
        out += format_double(c.offloading_stderr);
        out += ',';
        out += format_double(c.hit_rate_mean);
        out += ',';
        out += format_double(c.hit_rate_stderr);
        out += '\n';
    }
    return out;
}

std::string figure_csv(const std::vector<EpisodeRow>& rows, int figure) {
    if (figure < 2 || figure > 5) throw InvalidConfig("figure must be 2, 3, 4 or 5");
    const bool zipf_axis = figure == 2 || figure == 3;
    const bool delay_metric = figure == 2 || figure == 4;

    std::set<double> zipfs;
    std::set<std::size_t> capacities;
    for (const EpisodeRow& r : rows) {
        zipfs.insert(r.zipf_exponent);
        capacities.insert(r.capacity);
    }
    if (rows.empty()) throw MissingAxisError("result table is empty");
    if (zipf_axis) {
        if (zipfs.size() < 2 && capacities.size() > 1)
            throw MissingAxisError("table was swept over capacity, not the Zipf exponent");
        if (capacities.size() > 1)
            throw MissingAxisError("multiple capacities present; sweep one capacity per figure");
    } else {
        if (capacities.size() < 2 && zipfs.size() > 1)
            throw MissingAxisError("table was swept over the Zipf exponent, not capacity");
        if (zipfs.size() > 1)
            throw MissingAxisError("multiple Zipf exponents present; sweep one per figure");
    }

    const std::vector<AggregateCell> cells = aggregate(rows);
    std::string out = "x_value,scheme,mean,stderr\n";
    for (const AggregateCell& c : cells) {
        out += zipf_axis ? format_double(c.zipf_exponent) : std::to_string(c.capacity);
        out += ',';
        out += to_string(c.scheme);
        out += ',';
        out += format_double(delay_metric ? c.delay_mean : c.offloading_mean);
        out += ',';
        out += format_double(delay_metric ? c.delay_stderr : c.offloading_stderr);
        out += '\n';
    }
    return out;
}

std::vector<EpisodeRow> parse_raw_csv(std::string_view text) {
    std::vector<EpisodeRow> rows;
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string line(text.substr(start, end - start));
        start = end + 1;
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw ConfigError("malformed results row: " + line);
        EpisodeRow row;
        const auto scheme = scheme_from_string(fields[0]);
        if (!scheme) throw ConfigError("unknown scheme in results row: " + fields[0]);
        row.scheme = *scheme;
        row.zipf_exponent = std::strtod(fields[1].c_str(), nullptr);
        row.capacity = std::strtoull(fields[2].c_str(), nullptr, 10);
        row.seed = std::strtoull(fields[3].c_str(), nullptr, 10);
        row.metrics.average_service_delay_s = std::strtod(fields[4].c_str(), nullptr);
        row.metrics.offloading_gain =
            fields[5] == "inf" ? std::numeric_limits<double>::infinity()
                               : std::strtod(fields[5].c_str(), nullptr);
        row.metrics.cache_hit_rate = std::strtod(fields[6].c_str(), nullptr);
        row.metrics.requests_served = std::strtoull(fields[7].c_str(), nullptr, 10);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cellcache
