#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ofdmim/montecarlo.hpp"
#include "ofdmim/runconfig.hpp"

namespace ofdmim {

inline constexpr const char* kToolName = "ofdmim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Frozen result schema; plotting scripts depend on the column order.
inline constexpr const char* kCsvHeader =
    "snr_db,detector,ber,ber_ci,sap_err,omega_c,omega_l,omega_i,omega_ic,omega_ii,trials";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// One row per (SNR point, detector), detectors in order ml, klv, subml.
/// Probability columns are empirical fractions; ber_ci is the 95% Wilson
/// half-width of the BER.
void write_result_csv(std::ostream& os, const SweepResult& result);
void write_result_csv(const std::string& path, const SweepResult& result);

/// Rebuilds per-point tallies from a result CSV. Counts are recovered
/// exactly because fractions are stored in round-trip precision; label
/// depths collapse to the aggregates the schema keeps (depth 1, depth 2,
/// deeper-than-2).
SweepResult read_result_csv(std::istream& is, const FrameConfig& frame);
SweepResult read_result_csv(const std::string& path, const FrameConfig& frame);

void write_bounds_json(std::ostream& os, const std::vector<BoundReport>& reports);
void write_bounds_json(const std::string& path, const std::vector<BoundReport>& reports);

/// Reproducibility record: tool and compiler versions, seed, config hash,
/// the full effective config, and the artifact filenames. Feeding a
/// manifest back through --config replays the run.
void write_manifest(std::ostream& os, const RunConfig& config, const std::string& results_csv,
                    const std::string& bounds_json);
void write_manifest(const std::string& path, const RunConfig& config,
                    const std::string& results_csv, const std::string& bounds_json);

}  // namespace ofdmim
