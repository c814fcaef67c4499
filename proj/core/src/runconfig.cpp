#include "ofdmim/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ofdmim {

using nlohmann::json;

RunConfig RunConfig::preset(const std::string& name) {
    RunConfig config;  // defaults are the fig2 parameters
    if (name == "fig2") return config;
    if (name == "fig3") {
        config.num_subcarriers = 100;
        config.n = 10;
        config.k = 5;
        return config;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig2 or fig3)");
}

namespace {

void apply_json(RunConfig& config, const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "preset") continue;  // applied first by the caller
        if (key == "num_subcarriers") config.num_subcarriers = value.get<int>();
        else if (key == "n") config.n = value.get<int>();
        else if (key == "k") config.k = value.get<int>();
        else if (key == "mod_order") config.mod_order = value.get<int>();
        else if (key == "snr_min") config.snr_min = value.get<double>();
        else if (key == "snr_max") config.snr_max = value.get<double>();
        else if (key == "snr_step") config.snr_step = value.get<double>();
        else if (key == "snr_list") config.snr_list = value.get<std::vector<double>>();
        else if (key == "trials") config.trials = value.get<std::uint64_t>();
        else if (key == "seed") config.seed = value.get<std::uint64_t>();
        else if (key == "pdp_type") config.pdp_type = value.get<std::string>();
        else if (key == "pdp_length") config.pdp_length = value.get<int>();
        else if (key == "pdp_powers") config.pdp_powers = value.get<std::vector<double>>();
        else if (key == "fallback") config.fallback = value.get<std::string>();
        else if (key == "snr_mode") config.snr_mode = value.get<std::string>();
        else if (key == "sigma2") {
            if (value.is_null()) config.sigma2.reset();
            else config.sigma2 = value.get<double>();
        }
        else if (key == "max_label_depth") config.max_label_depth = value.get<int>();
        else if (key == "workers") config.workers = value.get<int>();
        else if (key == "out_dir") config.out_dir = value.get<std::string>();
        else if (key == "strict") config.strict = value.get<bool>();
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

json simulation_json(const RunConfig& c) {
    json j;
    j["num_subcarriers"] = c.num_subcarriers;
    j["n"] = c.n;
    j["k"] = c.k;
    j["mod_order"] = c.mod_order;
    j["snr_min"] = c.snr_min;
    j["snr_max"] = c.snr_max;
    j["snr_step"] = c.snr_step;
    j["snr_list"] = c.snr_list;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["pdp_type"] = c.pdp_type;
    j["pdp_length"] = c.pdp_length;
    j["pdp_powers"] = c.pdp_powers;
    j["fallback"] = c.fallback;
    j["snr_mode"] = c.snr_mode;
    if (c.sigma2) j["sigma2"] = *c.sigma2;
    else j["sigma2"] = nullptr;
    j["max_label_depth"] = c.max_label_depth;
    return j;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    if (j.is_object() && j.contains("config") && j.contains("config_hash"))
        j = j["config"];  // run manifest: replay its embedded config
    RunConfig config;
    if (j.is_object() && j.contains("preset"))
        config = preset(j["preset"].get<std::string>());
    apply_json(config, j);
    return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string RunConfig::to_json_text() const {
    json j = simulation_json(*this);
    j["workers"] = workers;
    j["out_dir"] = out_dir;
    j["strict"] = strict;
    return j.dump(2);
}

std::string RunConfig::simulation_json_text() const { return simulation_json(*this).dump(); }

std::uint64_t RunConfig::config_hash() const {
    const std::string text = simulation_json_text();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<double> RunConfig::snr_grid() const {
    if (!snr_list.empty()) return snr_list;
    if (snr_step <= 0.0) throw std::invalid_argument("snr_step must be positive");
    if (snr_max < snr_min) throw std::invalid_argument("snr_max must be >= snr_min");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((snr_max - snr_min) / snr_step + 1e-9)) + 1;
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid.push_back(snr_min + snr_step * i);
    return grid;
}

SubblockParams RunConfig::subblock_params() const { return SubblockParams(n, k, mod_order); }

PowerDelayProfile RunConfig::power_delay_profile() const {
    if (pdp_type == "exponential") return PowerDelayProfile::exponential(pdp_length);
    if (pdp_type == "single_tap") return PowerDelayProfile::single_tap();
    if (pdp_type == "custom") {
        PowerDelayProfile pdp;
        pdp.tap_powers = pdp_powers;
        double total = 0.0;
        for (double p : pdp.tap_powers) total += p;
        if (total <= 0.0) throw std::invalid_argument("custom profile must have positive power");
        for (double& p : pdp.tap_powers) p /= total;
        return pdp;
    }
    throw std::invalid_argument("unknown pdp_type '" + pdp_type + "'");
}

MonteCarloConfig RunConfig::to_monte_carlo() const {
    const SubblockParams params = subblock_params();
    MonteCarloConfig mc(FrameConfig(num_subcarriers, params),
                        Constellation::square_qam(mod_order));
    mc.snr_grid_db = snr_grid();
    mc.trials_per_point = trials;
    mc.master_seed = seed;
    mc.pdp = power_delay_profile();
    if (fallback == "default") mc.fallback = FallbackPolicy::default_sap;
    else if (fallback == "ml") mc.fallback = FallbackPolicy::ml;
    else throw std::invalid_argument("unknown fallback policy '" + fallback + "'");
    if (snr_mode == "es_n0") mc.snr_mode = SnrMode::es_n0;
    else if (snr_mode == "eb_n0") mc.snr_mode = SnrMode::eb_n0;
    else throw std::invalid_argument("unknown snr_mode '" + snr_mode + "'");
    mc.sigma2_override = sigma2;
    mc.max_label_depth = max_label_depth;
    mc.workers = workers;
    mc.validate();
    return mc;
}

}  // namespace ofdmim
