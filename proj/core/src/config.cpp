#include "cellcache/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cellcache/errors.hpp"

namespace cellcache {

void SweepSpec::validate() const {
    base.validate();
    if (zipf_values.empty()) throw InvalidConfig("zipf_values must not be empty");
    if (capacity_values.empty()) throw InvalidConfig("capacity_values must not be empty");
    if (schemes.empty()) throw InvalidConfig("schemes must not be empty");
    if (seeds.empty()) throw InvalidConfig("seeds must not be empty");
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidConfig("seeds must be distinct");
    for (double z : zipf_values) {
        SimConfig probe = base;
        probe.zipf.zipf_exponent = z;
        probe.validate();
    }
    for (std::size_t c : capacity_values) {
        SimConfig probe = base;
        probe.storage_capacity_files = c;
        probe.validate();
    }
}

SimConfig default_config() { return SimConfig{}; }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view value, std::size_t line, const std::string& key) {
    // std::from_chars for doubles is incomplete on some toolchains; strtod is
    // locale-independent under the default "C" locale.
    std::string buf(value);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        fail(line, "expected a number for '" + key + "', got '" + buf + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view value, std::size_t line, const std::string& key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, "expected a non-negative integer for '" + key + "', got '" +
                       std::string(value) + "'");
    return v;
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> parts;
    while (!value.empty()) {
        const std::size_t comma = value.find(',');
        parts.push_back(trim(value.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return parts;
}

}  // namespace

LoadedConfig parse_config_text(std::string_view text) {
    LoadedConfig out;
    SimConfig& sim = out.sim;
    std::vector<double> zipf_values;
    std::vector<std::size_t> capacity_values;
    std::vector<Scheme> schemes;
    std::vector<std::uint64_t> seeds;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for '" + key + "'");

        if (key == "num_contents") sim.zipf.num_contents = parse_u64(value, line_no, key);
        else if (key == "zipf_exponent") sim.zipf.zipf_exponent = parse_double(value, line_no, key);
        else if (key == "mean_popularity") sim.zipf.mean_popularity = parse_double(value, line_no, key);
        else if (key == "content_size_bits") sim.content_size_bits = parse_double(value, line_no, key);
        else if (key == "num_scbs") sim.geometry.num_scbs = parse_u64(value, line_no, key);
        else if (key == "num_sues") sim.num_sues = parse_u64(value, line_no, key);
        else if (key == "num_mues") sim.num_mues = parse_u64(value, line_no, key);
        else if (key == "num_user_types") sim.num_user_types = parse_u64(value, line_no, key);
        else if (key == "type_permutations") {
            if (value == "shifted") sim.type_permutations = TypePermutations::shifted;
            else if (value == "random") sim.type_permutations = TypePermutations::random;
            else fail(line_no, "type_permutations must be 'shifted' or 'random'");
        }
        else if (key == "macro_radius_m") sim.geometry.macro_radius_m = parse_double(value, line_no, key);
        else if (key == "small_cell_radius_m") sim.geometry.small_cell_radius_m = parse_double(value, line_no, key);
        else if (key == "hotspot_center_frac") sim.geometry.hotspot_center_frac = parse_double(value, line_no, key);
        else if (key == "hotspot_radius_m") sim.geometry.hotspot_radius_m = parse_double(value, line_no, key);
        else if (key == "mbs_tx_power_dbm") sim.geometry.mbs_tx_power_dbm = parse_double(value, line_no, key);
        else if (key == "scbs_tx_power_dbm") sim.geometry.scbs_tx_power_dbm = parse_double(value, line_no, key);
        else if (key == "bandwidth_hz") sim.geometry.bandwidth_hz = parse_double(value, line_no, key);
        else if (key == "noise_density_dbm_hz") sim.geometry.noise_density_dbm_hz = parse_double(value, line_no, key);
        else if (key == "interference") {
            if (value == "orthogonal") sim.interference = InterferenceMode::orthogonal;
            else if (value == "cochannel") sim.interference = InterferenceMode::cochannel;
            else fail(line_no, "interference must be 'orthogonal' or 'cochannel'");
        }
        else if (key == "scheme") {
            const auto s = scheme_from_string(std::string(value));
            if (!s) fail(line_no, "unknown scheme '" + std::string(value) + "'");
            sim.scheme = *s;
        }
        else if (key == "dt_s") sim.dt_s = parse_double(value, line_no, key);
        else if (key == "training_instants") sim.training_instants = parse_u64(value, line_no, key);
        else if (key == "training_min_requests") sim.training_min_requests = parse_u64(value, line_no, key);
        else if (key == "serving_instants") sim.serving_instants = parse_u64(value, line_no, key);
        else if (key == "storage_capacity_files") sim.storage_capacity_files = parse_u64(value, line_no, key);
        else if (key == "delay_cap_s") sim.delay_cap_s = parse_double(value, line_no, key);
        else if (key == "utility_exponent") sim.schedule.utility_exponent = parse_double(value, line_no, key);
        else if (key == "regret_exponent") sim.schedule.regret_exponent = parse_double(value, line_no, key);
        else if (key == "strategy_exponent") sim.schedule.strategy_exponent = parse_double(value, line_no, key);
        else if (key == "boltzmann_beta") sim.boltzmann_beta = parse_double(value, line_no, key);
        else if (key == "removal_beta_numerator") sim.removal_beta_numerator = parse_double(value, line_no, key);
        else if (key == "kmin") sim.clustering.k_min = parse_u64(value, line_no, key);
        else if (key == "kmax") sim.clustering.k_max = parse_u64(value, line_no, key);
        else if (key == "kmeans_restarts") sim.clustering.kmeans_restarts = parse_u64(value, line_no, key);
        else if (key == "kmeans_max_iters") sim.clustering.kmeans_max_iters = parse_u64(value, line_no, key);
        else if (key == "master_seed") {
            sim.master_seed = parse_u64(value, line_no, key);
            out.master_seed_set = true;
        }
        else if (key == "zipf_values") {
            for (std::string_view part : split_list(value))
                zipf_values.push_back(parse_double(part, line_no, key));
        }
        else if (key == "capacity_values") {
            for (std::string_view part : split_list(value))
                capacity_values.push_back(parse_u64(part, line_no, key));
        }
        else if (key == "schemes") {
            for (std::string_view part : split_list(value)) {
                const auto s = scheme_from_string(std::string(part));
                if (!s) fail(line_no, "unknown scheme '" + std::string(part) + "'");
                schemes.push_back(*s);
            }
        }
        else if (key == "seeds") {
            for (std::string_view part : split_list(value))
                seeds.push_back(parse_u64(part, line_no, key));
        }
        else fail(line_no, "unknown key '" + key + "'");
    }

    out.sweep.base = sim;
    out.sweep.zipf_values =
        zipf_values.empty() ? std::vector<double>{sim.zipf.zipf_exponent} : zipf_values;
    out.sweep.capacity_values = capacity_values.empty()
                                    ? std::vector<std::size_t>{sim.storage_capacity_files}
                                    : capacity_values;
    out.sweep.schemes = schemes.empty() ? std::vector<Scheme>{sim.scheme} : schemes;
    out.sweep.seeds = seeds.empty() ? std::vector<std::uint64_t>{sim.master_seed} : seeds;
    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<std::string> config_warnings(const LoadedConfig& cfg) {
    std::vector<std::string> out;
    for (double z : cfg.sweep.zipf_values) {
        SimConfig probe = cfg.sweep.base;
        probe.zipf.zipf_exponent = z;
        for (std::string& w : probe.warnings()) {
            if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
        }
    }
    return out;
}

}  // namespace cellcache
