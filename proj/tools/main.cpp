// ofdmim: OFDM index-modulation link simulator and detector comparison.
//
//   simulate  - Monte Carlo BER/SAP sweep, writes CSV + bound report + manifest
//   map-demo  - inspect the rank -> activation-pattern table for (n, k, M)
//   bounds    - re-check the probability-gap bounds on a saved result CSV

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofdmim/combin.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/report.hpp"
#include "ofdmim/runconfig.hpp"

namespace {

using namespace ofdmim;

constexpr int kExitFailure = 1;
constexpr int kExitBoundFailure = 3;

struct CommonOpts {
    std::string preset;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    auto* preset = cmd->add_option("--preset", opts.preset, "Named preset (fig2 | fig3)")
                       ->check(CLI::IsMember({"fig2", "fig3"}));
    cmd->add_option("--config", opts.config_path, "JSON config file or run manifest")
        ->excludes(preset);
}

RunConfig resolve_base(const CommonOpts& opts) {
    if (!opts.config_path.empty()) return RunConfig::from_file(opts.config_path);
    if (!opts.preset.empty()) return RunConfig::preset(opts.preset);
    return RunConfig{};
}

void print_bound_reports(const std::vector<BoundReport>& reports) {
    for (const BoundReport& report : reports) {
        std::printf("snr %g dB (r=%.5f):\n", report.snr_db, report.r);
        for (const BoundCheck& check : report.checks) {
            std::printf("  %-20s lhs=%-12.6g rhs=%-12.6g slack=%-10.3g %s\n", check.name.c_str(),
                        check.lhs, check.rhs, check.slack, check.pass ? "pass" : "FAIL");
        }
    }
}

int cmd_simulate(const RunConfig& config) {
    const MonteCarloConfig mc = config.to_monte_carlo();

    std::filesystem::create_directories(config.out_dir);
    const std::string csv_path = config.out_dir + "/results.csv";
    const std::string bounds_path = config.out_dir + "/bounds.json";
    const std::string manifest_path = config.out_dir + "/manifest.json";

    const int total = static_cast<int>(mc.snr_grid_db.size());
    const SweepResult result = sweep(mc, [&](int index, double snr_db) {
        std::fprintf(stderr, "[%d/%d] snr=%g dB, %llu trials\n", index + 1, total, snr_db,
                     static_cast<unsigned long long>(mc.trials_per_point));
    });
    const std::vector<BoundReport> reports = check_bounds(result, mc.frame.subblock());

    write_result_csv(csv_path, result);
    write_bounds_json(bounds_path, reports);
    write_manifest(manifest_path, config, "results.csv", "bounds.json");

    std::printf("%-8s %-12s %-12s %-12s %s\n", "snr_db", "ber_ml", "ber_klv", "ber_subml",
                "bounds");
    bool all_pass = true;
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const OutcomeTally& t = result.points[i];
        const bool point_pass = reports[i].all_pass();
        all_pass = all_pass && point_pass;
        std::printf("%-8g %-12.4e %-12.4e %-12.4e %s\n", result.snr_db[i], t.ml.ber(),
                    t.klv.ber(), t.subml.ber(), point_pass ? "pass" : "FAIL");
    }
    std::printf("wrote %s, %s, %s\n", csv_path.c_str(), bounds_path.c_str(),
                manifest_path.c_str());
    if (!all_pass) {
        std::fprintf(stderr, "warning: some bound checks failed (see %s)\n", bounds_path.c_str());
        if (config.strict) return kExitBoundFailure;
    }
    return 0;
}

int cmd_map_demo(int n, int k, int mod_order) {
    const SubblockParams params(n, k, mod_order);
    std::printf("n=%d k=%d M=%d: C(n,k)=%llu p1=%d p2=%d p=%d legal=%llu illegal=%llu r=%s\n",
                params.n(), params.k(), params.mod_order(),
                static_cast<unsigned long long>(params.pattern_count()), params.index_bits(),
                params.symbol_bits(), params.bits_per_subblock(),
                static_cast<unsigned long long>(params.legal_count()),
                static_cast<unsigned long long>(params.illegal_count()),
                format_double(params.illegal_ratio()).c_str());

    const std::uint64_t rows = std::min<std::uint64_t>(params.pattern_count(), 256);
    std::printf("%-6s %-24s %s\n", "rank", "indices", "legal");
    for (std::uint64_t rank = 0; rank < rows; ++rank) {
        const Sap sap = sap_from_rank(rank, params);
        std::string indices = "{";
        for (int idx : sap.indices()) {
            if (indices.size() > 1) indices += ',';
            indices += std::to_string(idx);
        }
        indices += '}';
        std::printf("%-6llu %-24s %s\n", static_cast<unsigned long long>(rank), indices.c_str(),
                    is_legal(sap, params) ? "yes" : "no");
    }
    if (rows < params.pattern_count())
        std::printf("(truncated: %llu of %llu rows)\n", static_cast<unsigned long long>(rows),
                    static_cast<unsigned long long>(params.pattern_count()));
    return 0;
}

int cmd_bounds(const RunConfig& config, const std::string& csv_path, bool strict,
               const std::string& out_path) {
    const FrameConfig frame(config.num_subcarriers, config.subblock_params());
    const SweepResult result = read_result_csv(csv_path, frame);
    const std::vector<BoundReport> reports = check_bounds(result, frame.subblock());
    print_bound_reports(reports);
    if (!out_path.empty()) {
        write_bounds_json(out_path, reports);
        std::printf("wrote %s\n", out_path.c_str());
    }
    bool all_pass = true;
    for (const BoundReport& report : reports) all_pass = all_pass && report.all_pass();
    std::printf("bounds: %s\n", all_pass ? "all pass" : "FAIL");
    if (!all_pass && strict) return kExitBoundFailure;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM index-modulation link simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo sweep");
    CommonOpts sim_common;
    add_common(sim, sim_common);
    std::optional<std::uint64_t> opt_seed, opt_trials;
    std::optional<double> opt_snr_min, opt_snr_max, opt_snr_step, opt_sigma2;
    std::optional<int> opt_workers, opt_max_depth;
    std::optional<std::string> opt_fallback, opt_snr_mode, opt_out;
    std::vector<double> opt_snr_list;
    bool opt_strict = false;
    sim->add_option("--seed", opt_seed, "Master RNG seed");
    sim->add_option("--trials", opt_trials, "Trials (frames) per SNR point");
    sim->add_option("--snr-min", opt_snr_min, "SNR grid start (dB)");
    sim->add_option("--snr-max", opt_snr_max, "SNR grid end (dB)");
    sim->add_option("--snr-step", opt_snr_step, "SNR grid step (dB)");
    sim->add_option("--snr", opt_snr_list, "Explicit SNR points (dB), overrides the grid");
    sim->add_option("--sigma2", opt_sigma2, "Fixed per-dimension noise variance override");
    sim->add_option("--fallback", opt_fallback, "subml fallback policy (default | ml)")
        ->check(CLI::IsMember({"default", "ml"}));
    sim->add_option("--snr-mode", opt_snr_mode, "SNR definition (es_n0 | eb_n0)")
        ->check(CLI::IsMember({"es_n0", "eb_n0"}));
    sim->add_option("--workers", opt_workers, "Worker threads (0 = hardware)");
    sim->add_option("--max-depth", opt_max_depth, "Label depth cap (0 = auto)");
    sim->add_option("--out", opt_out, "Output directory");
    sim->add_flag("--strict", opt_strict, "Exit nonzero when a bound check fails");

    // map-demo
    auto* demo = app.add_subcommand("map-demo", "Print the rank -> SAP table");
    int demo_n = 8, demo_k = 4, demo_m = 4;
    demo->add_option("n", demo_n, "Subcarriers per subblock")->required();
    demo->add_option("k", demo_k, "Active subcarriers")->required();
    demo->add_option("M", demo_m, "Constellation order");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Re-check bounds on a saved result CSV");
    CommonOpts bnd_common;
    add_common(bnd, bnd_common);
    std::string bnd_csv;
    std::string bnd_out;
    bool bnd_strict = false;
    bnd->add_option("csv", bnd_csv, "Result CSV from simulate")->required();
    bnd->add_option("--out", bnd_out, "Write the bound report JSON here");
    bnd->add_flag("--strict", bnd_strict, "Exit nonzero when a bound check fails");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            RunConfig config = resolve_base(sim_common);
            if (opt_seed) config.seed = *opt_seed;
            if (opt_trials) config.trials = *opt_trials;
            if (opt_snr_min) config.snr_min = *opt_snr_min;
            if (opt_snr_max) config.snr_max = *opt_snr_max;
            if (opt_snr_step) config.snr_step = *opt_snr_step;
            if (!opt_snr_list.empty()) config.snr_list = opt_snr_list;
            if (opt_sigma2) config.sigma2 = *opt_sigma2;
            if (opt_fallback) config.fallback = *opt_fallback;
            if (opt_snr_mode) config.snr_mode = *opt_snr_mode;
            if (opt_workers) config.workers = *opt_workers;
            if (opt_max_depth) config.max_label_depth = *opt_max_depth;
            if (opt_out) config.out_dir = *opt_out;
            if (opt_strict) config.strict = true;
            return cmd_simulate(config);
        }
        if (demo->parsed()) return cmd_map_demo(demo_n, demo_k, demo_m);
        if (bnd->parsed()) {
            if (bnd_common.preset.empty() && bnd_common.config_path.empty())
                throw std::runtime_error("bounds needs --preset or --config to size the table");
            return cmd_bounds(resolve_base(bnd_common), bnd_csv, bnd_strict, bnd_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return 0;
}
