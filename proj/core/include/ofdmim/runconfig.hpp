#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ofdmim/montecarlo.hpp"

namespace ofdmim {

/// Flat, serializable experiment description: everything needed to rebuild
/// a MonteCarloConfig plus output options. Defaults equal the `fig2`
/// preset. JSON keys match the field names; see the README for the schema.
struct RunConfig {
    int num_subcarriers = 128;
    int n = 8;
    int k = 4;
    int mod_order = 4;

    double snr_min = 0.0;
    double snr_max = 35.0;
    double snr_step = 5.0;
    std::vector<double> snr_list;  // wins over min/max/step when nonempty

    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;

    std::string pdp_type = "exponential";  // exponential | single_tap | custom
    int pdp_length = 8;
    std::vector<double> pdp_powers;  // custom profile, normalized on use

    std::string fallback = "default";  // default | ml
    std::string snr_mode = "es_n0";    // es_n0 | eb_n0
    std::optional<double> sigma2;      // fixed noise variance override
    int max_label_depth = 0;           // 0 = auto cap
    int workers = 0;                   // 0 = hardware concurrency

    std::string out_dir = ".";
    bool strict = false;

    /// Named presets: fig2 (N=128, n=8, k=4, QPSK) and fig3 (N=100, n=10,
    /// k=5, QPSK).
    static RunConfig preset(const std::string& name);

    /// Parses a JSON config. A run manifest is accepted too (its embedded
    /// "config" object is used), so runs can be replayed from manifests.
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    /// Full canonical JSON (sorted keys), including output options.
    std::string to_json_text() const;
    /// Simulation-defining subset: excludes out_dir, strict, and workers,
    /// none of which can change the numbers.
    std::string simulation_json_text() const;
    /// FNV-1a over simulation_json_text().
    std::uint64_t config_hash() const;

    std::vector<double> snr_grid() const;
    SubblockParams subblock_params() const;
    PowerDelayProfile power_delay_profile() const;
    MonteCarloConfig to_monte_carlo() const;
};

}  // namespace ofdmim
