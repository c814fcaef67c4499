#include "ofdmim/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ofdmim {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kDetectorNames[3] = {"ml", "klv", "subml"};

const DetectorTally& detector_tally(const OutcomeTally& tally, int which) {
    switch (which) {
        case 0: return tally.ml;
        case 1: return tally.klv;
        default: return tally.subml;
    }
}

DetectorTally& detector_tally(OutcomeTally& tally, int which) {
    switch (which) {
        case 0: return tally.ml;
        case 1: return tally.klv;
        default: return tally.subml;
    }
}

std::uint64_t exact_count(double fraction, std::uint64_t total, const char* what) {
    const double scaled = fraction * static_cast<double>(total);
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 0.01 || rounded < 0.0 ||
        rounded > static_cast<double>(total))
        throw std::runtime_error(std::string("CSV column '") + what +
                                 "' is not a count/total fraction");
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace

void write_result_csv(std::ostream& os, const SweepResult& result) {
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const OutcomeTally& t = result.points[i];
        const std::string snr = format_double(result.snr_db[i]);
        const std::string omega_cols =
            format_double(t.frac(t.omega_c())) + ',' + format_double(t.frac(t.omega_l())) + ',' +
            format_double(t.frac(t.omega_i())) + ',' + format_double(t.frac(t.omega_ic())) + ',' +
            format_double(t.frac(t.omega_ii()));
        for (int d = 0; d < 3; ++d) {
            const DetectorTally& dt = detector_tally(t, d);
            os << snr << ',' << kDetectorNames[d] << ',' << format_double(dt.ber()) << ','
               << format_double(wilson(dt.bit_errors, dt.bits).half_width) << ','
               << format_double(t.frac(dt.sap_errors)) << ',' << omega_cols << ',' << t.trials
               << '\n';
        }
    }
}

void write_result_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_result_csv(out, result);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SweepResult read_result_csv(std::istream& is, const FrameConfig& frame) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty result CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("unexpected result CSV header");

    const int g_count = frame.num_subblocks();
    const int p = frame.subblock().bits_per_subblock();

    SweepResult result;
    int row_in_point = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 11) throw std::runtime_error("malformed result CSV row: " + line);

        const double snr = std::strtod(fields[0].c_str(), nullptr);
        const int d = row_in_point;
        if (fields[1] != kDetectorNames[d])
            throw std::runtime_error("result CSV rows must cycle ml,klv,subml");

        const double ber = std::strtod(fields[2].c_str(), nullptr);
        const double sap_err = std::strtod(fields[4].c_str(), nullptr);
        const std::uint64_t trials = std::strtoull(fields[10].c_str(), nullptr, 10);
        const std::uint64_t subblocks = trials * static_cast<std::uint64_t>(g_count);
        const std::uint64_t bits = subblocks * static_cast<std::uint64_t>(p);

        if (d == 0) {
            const double f_c = std::strtod(fields[5].c_str(), nullptr);
            const double f_l = std::strtod(fields[6].c_str(), nullptr);
            const double f_i = std::strtod(fields[7].c_str(), nullptr);
            const double f_ic = std::strtod(fields[8].c_str(), nullptr);
            const double f_ii = std::strtod(fields[9].c_str(), nullptr);
            OutcomeTally tally(2);
            tally.subblocks = subblocks;
            tally.trials = trials;
            tally.depth_correct[0] = exact_count(f_c, subblocks, "omega_c");
            tally.depth_incorrect[0] = exact_count(f_l, subblocks, "omega_l");
            const std::uint64_t i_all = exact_count(f_i, subblocks, "omega_i");
            tally.depth_correct[1] = exact_count(f_ic, subblocks, "omega_ic");
            const std::uint64_t ii = exact_count(f_ii, subblocks, "omega_ii");
            if (tally.depth_correct[0] + tally.depth_incorrect[0] + i_all != subblocks)
                throw std::runtime_error("inconsistent label fractions in result CSV");
            if (tally.depth_correct[1] + ii > i_all)
                throw std::runtime_error("inconsistent label fractions in result CSV");
            tally.depth_incorrect[1] = i_all - tally.depth_correct[1] - ii;
            tally.overflow = ii;  // depth > 2 re-entered as one bucket
            result.snr_db.push_back(snr);
            result.points.push_back(std::move(tally));
        } else if (snr != result.snr_db.back()) {
            throw std::runtime_error("result CSV rows must cycle ml,klv,subml");
        }

        DetectorTally& dt = detector_tally(result.points.back(), d);
        dt.bits = bits;
        dt.bit_errors = exact_count(ber, bits, "ber");
        dt.sap_errors = exact_count(sap_err, subblocks, "sap_err");

        row_in_point = (row_in_point + 1) % 3;
    }
    if (row_in_point != 0) throw std::runtime_error("truncated result CSV");
    return result;
}

SweepResult read_result_csv(const std::string& path, const FrameConfig& frame) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_result_csv(in, frame);
}

namespace {

json bounds_to_json(const std::vector<BoundReport>& reports) {
    json points = json::array();
    for (const BoundReport& report : reports) {
        json checks = json::array();
        for (const BoundCheck& check : report.checks) {
            checks.push_back({{"name", check.name},
                              {"lhs", check.lhs},
                              {"rhs", check.rhs},
                              {"slack", check.slack},
                              {"pass", check.pass}});
        }
        points.push_back({{"snr_db", report.snr_db},
                          {"r", report.r},
                          {"all_pass", report.all_pass()},
                          {"checks", checks}});
    }
    return json{{"reports", points}};
}

std::string hash_hex(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

void write_bounds_json(std::ostream& os, const std::vector<BoundReport>& reports) {
    os << bounds_to_json(reports).dump(2) << '\n';
}

void write_bounds_json(const std::string& path, const std::vector<BoundReport>& reports) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_bounds_json(out, reports);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_manifest(std::ostream& os, const RunConfig& config, const std::string& results_csv,
                    const std::string& bounds_json) {
    json manifest;
    manifest["tool"] = {{"name", kToolName},
                        {"version", kToolVersion},
                        {"compiler", __VERSION__}};
    manifest["seed"] = config.seed;
    manifest["config_hash"] = hash_hex(config.config_hash());
    manifest["config"] = json::parse(config.to_json_text());
    manifest["outputs"] = {{"results_csv", results_csv}, {"bounds_json", bounds_json}};
    os << manifest.dump(2) << '\n';
}

void write_manifest(const std::string& path, const RunConfig& config,
                    const std::string& results_csv, const std::string& bounds_json) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_manifest(out, config, results_csv, bounds_json);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ofdmim
