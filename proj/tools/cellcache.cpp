// cellcache command line: single episodes, parameter sweeps, figure data
// extraction and configuration linting for the small-cell caching simulator.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cellcache/clustering.hpp"
#include "cellcache/config.hpp"
#include "cellcache/errors.hpp"
#include "cellcache/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cellcache;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

LoadedConfig load_or_default(const std::string& config_path) {
    if (config_path.empty()) return parse_config_text("");
    return load_config(config_path);
}

void apply_seed(LoadedConfig& cfg, const std::optional<std::uint64_t>& cli_seed) {
    if (cli_seed) {
        cfg.sim.master_seed = *cli_seed;
        cfg.master_seed_set = true;
    } else if (!cfg.master_seed_set) {
        if (const char* env = std::getenv("CELLCACHE_SEED")) {
            cfg.sim.master_seed = std::strtoull(env, nullptr, 10);
            cfg.master_seed_set = true;
        }
    }
    // Keep a seed list that was only defaulted from the base seed in sync.
    if (cfg.sweep.seeds.size() == 1 && cfg.sweep.seeds.front() != cfg.sim.master_seed &&
        cli_seed) {
        cfg.sweep.seeds.front() = cfg.sim.master_seed;
    }
    cfg.sweep.base.master_seed = cfg.sim.master_seed;
}

void print_warnings(const LoadedConfig& cfg) {
    for (const std::string& w : config_warnings(cfg)) {
        std::cerr << "warning: " << w << "\n";
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
    std::string out = "t,scbs,action,utility,max_regret,sue_requests,hits\n";
    for (const TraceRow& row : trace) {
        out += std::to_string(row.t);
        out += ',';
        out += std::to_string(row.scbs);
        out += ',';
        out += std::to_string(row.action);
        out += ',';
        out += format_double(row.utility);
        out += ',';
        out += format_double(row.max_regret);
        out += ',';
        out += std::to_string(row.requests);
        out += ',';
        out += std::to_string(row.hits);
        out += '\n';
    }
    return out;
}

void dump_clustering(const fs::path& dir, const SimConfig& cfg, const TrainingResult& training) {
    const Eigen::MatrixXd similarity = build_similarity(training.histograms);
    std::string sim_csv;
    for (Eigen::Index i = 0; i < similarity.rows(); ++i) {
        for (Eigen::Index j = 0; j < similarity.cols(); ++j) {
            if (j > 0) sim_csv += ',';
            sim_csv += format_double(similarity(i, j));
        }
        sim_csv += '\n';
    }
    write_file(dir / "clustering_similarity.csv", sim_csv);

    const SpectralDecomposition dec = spectral_decompose(similarity);
    std::string eig_csv = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
        eig_csv += std::to_string(i + 1) + ',' + format_double(dec.eigenvalues(i)) + '\n';
    }
    write_file(dir / "clustering_eigenvalues.csv", eig_csv);

    std::string label_csv = "user,label,scbs\n";
    for (std::size_t u = 0; u < training.histograms.size(); ++u) {
        const int label = cfg.scheme == Scheme::proposed ? training.clusters.labels[u] : -1;
        label_csv += std::to_string(u) + ',' + std::to_string(label) + ',' +
                     std::to_string(training.association.scbs_of_sue[u]) + '\n';
    }
    write_file(dir / "clustering_labels.csv", label_csv);
}

int run_single(const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& out_dir, bool with_trace, bool with_clustering_dump) {
    LoadedConfig cfg = load_or_default(config_path);
    apply_seed(cfg, seed);
    cfg.sim.validate();
    print_warnings(cfg);

    TrainingResult training;
    std::vector<TraceRow> trace;
    const bool want_outputs = !out_dir.empty() && (with_trace || with_clustering_dump);
    const MetricsRecord m =
        want_outputs ? run_episode(cfg.sim, &training, with_trace ? &trace : nullptr)
                     : run_episode(cfg.sim);
    std::cout << "scheme            " << to_string(cfg.sim.scheme) << "\n"
              << "seed              " << cfg.sim.master_seed << "\n"
              << "avg_delay_s       " << format_double(m.average_service_delay_s) << "\n"
              << "offloading_gain   " << format_double(m.offloading_gain) << "\n"
              << "hit_rate          " << format_double(m.cache_hit_rate) << "\n"
              << "requests_served   " << m.requests_served << "\n"
              << "cache_hits        " << m.cache_hits << "\n"
              << "mbs_served        " << m.mbs_served << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        EpisodeRow row{cfg.sim.scheme, cfg.sim.zipf.zipf_exponent,
                       cfg.sim.storage_capacity_files, cfg.sim.master_seed, m};
        write_file(fs::path(out_dir) / "results_raw.csv", raw_csv({row}));
        if (with_trace) write_file(fs::path(out_dir) / "trace.csv", trace_csv(trace));
        if (with_clustering_dump) dump_clustering(out_dir, cfg.sim, training);
    }
    return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, std::optional<std::uint64_t> seed,
                  const std::string& out_dir, unsigned jobs) {
    LoadedConfig cfg = load_or_default(config_path);
    apply_seed(cfg, seed);
    cfg.sweep.validate();
    print_warnings(cfg);

    const std::vector<EpisodeRow> rows = run_sweep(cfg.sweep, jobs);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "results_raw.csv", raw_csv(rows));
    write_file(fs::path(out_dir) / "results_agg.csv", aggregate_csv(aggregate(rows)));
    std::cout << "wrote " << rows.size() << " episodes to " << out_dir << "\n";
    return kExitOk;
}

int run_figure(int figure, const std::string& out_dir) {
    const fs::path raw_path = fs::path(out_dir) / "results_raw.csv";
    std::ifstream in(raw_path, std::ios::binary);
    if (!in) throw ConfigError("no results_raw.csv in '" + out_dir + "'; run a sweep first");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::vector<EpisodeRow> rows = parse_raw_csv(buf.str());

    const std::string csv = figure_csv(rows, figure);
    const fs::path fig_path = fs::path(out_dir) / ("fig" + std::to_string(figure) + ".csv");
    write_file(fig_path, csv);
    std::cout << "wrote " << fig_path.string() << "\n";
    return kExitOk;
}

int run_validate(const std::string& config_path) {
    LoadedConfig cfg = load_or_default(config_path);
    cfg.sim.validate();
    cfg.sweep.validate();
    const std::vector<std::string> warnings = config_warnings(cfg);
    for (const std::string& w : warnings) std::cout << "warning: " << w << "\n";
    std::cout << "config ok (" << warnings.size() << " warning"
              << (warnings.size() == 1 ? "" : "s") << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cellcache: seeded simulator of content caching in a wireless "
                 "small-cell network"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_out;
    std::string sweep_out = "out";
    std::string figure_out = "out";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    int figure = 2;
    bool with_trace = false;
    bool with_clustering_dump = false;

    CLI::App* cmd_run = app.add_subcommand("run", "run one episode and print its metrics");
    cmd_run->add_option("--config", config_path, "configuration file");
    cmd_run->add_option("--seed", seed, "master seed (overrides config)");
    cmd_run->add_option("--out", run_out, "also write results_raw.csv here");
    cmd_run->add_flag("--trace", with_trace,
                      "write a per-instant learner trace to <out>/trace.csv");
    cmd_run->add_flag("--dump-clustering", with_clustering_dump,
                      "write similarity/eigenvalue/label CSVs to <out>");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the configured parameter grid");
    cmd_sweep->add_option("--config", config_path, "configuration file");
    cmd_sweep->add_option("--seed", seed, "master seed (overrides config)");
    cmd_sweep->add_option("--jobs", jobs, "parallel episodes");
    cmd_sweep->add_option("--out", sweep_out, "output directory");

    CLI::App* cmd_figure =
        app.add_subcommand("figure", "extract plot data from a sweep's raw results");
    cmd_figure->add_option("--figure", figure, "figure number (2-5)")
        ->check(CLI::Range(2, 5))
        ->required();
    cmd_figure->add_option("--out", figure_out, "directory holding results_raw.csv");

    CLI::App* cmd_validate = app.add_subcommand("validate", "lint a configuration file");
    cmd_validate->add_option("--config", config_path, "configuration file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed())
            return run_single(config_path, seed, run_out, with_trace, with_clustering_dump);
        if (cmd_sweep->parsed()) return run_sweep_cmd(config_path, seed, sweep_out, jobs);
        if (cmd_figure->parsed()) return run_figure(figure, figure_out);
        if (cmd_validate->parsed()) return run_validate(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
