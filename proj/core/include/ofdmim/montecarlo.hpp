#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ofdmim/channel.hpp"
#include "ofdmim/detectors.hpp"
#include "ofdmim/stats.hpp"
#include "ofdmim/transceiver.hpp"

namespace ofdmim {

struct MonteCarloConfig {
    MonteCarloConfig(FrameConfig frame, Constellation constellation)
        : frame(std::move(frame)), constellation(std::move(constellation)) {}

    FrameConfig frame;
    Constellation constellation;
    std::vector<double> snr_grid_db{0.0};
    std::uint64_t trials_per_point = 1000;
    std::uint64_t master_seed = 1;
    PowerDelayProfile pdp = PowerDelayProfile::exponential();
    FallbackPolicy fallback = FallbackPolicy::default_sap;
    SnrMode snr_mode = SnrMode::es_n0;
    std::optional<double> sigma2_override;  // fixed noise variance, bypasses the SNR mapping
    int max_label_depth = 0;                // 0 selects the default cap
    int workers = 1;                        // 0 selects hardware concurrency

    int effective_label_depth() const {
        return max_label_depth > 0 ? max_label_depth
                                   : SapDetector::default_label_depth(frame.subblock());
    }
    void validate() const;
};

/// Integer counters for one detector across a batch of subblocks.
struct DetectorTally {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t sap_errors = 0;  // SAP wrong or produced by a fallback
    std::uint64_t fallbacks = 0;

    double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
    std::uint64_t sap_correct(std::uint64_t subblocks) const { return subblocks - sap_errors; }
};

/// Aggregated outcome counts for one SNR point. Merging is associative and
/// commutative, so parallel partial tallies reduce to the same totals in
/// any order.
struct OutcomeTally {
    explicit OutcomeTally(int max_depth = 16);

    DetectorTally ml, klv, subml;
    std::vector<std::uint64_t> depth_correct;    // label depth d at [d-1]
    std::vector<std::uint64_t> depth_incorrect;  // legal-incorrect terminals
    std::uint64_t overflow = 0;                  // first legal SAP beyond the cap
    std::uint64_t subblocks = 0;
    std::uint64_t trials = 0;
    std::uint64_t dominance_violations = 0;

    void merge(const OutcomeTally& other);

    int max_depth() const { return static_cast<int>(depth_correct.size()); }
    std::uint64_t omega_c() const { return depth_correct[0]; }
    std::uint64_t omega_l() const { return depth_incorrect[0]; }
    /// Best SAP illegal (label depth >= 2, overflow included).
    std::uint64_t omega_i() const { return subblocks - omega_c() - omega_l(); }
    std::uint64_t omega_ic() const { return max_depth() > 1 ? depth_correct[1] : 0; }
    std::uint64_t omega_il() const { return max_depth() > 1 ? depth_incorrect[1] : 0; }
    /// Two best SAPs illegal (depth >= 3, overflow included).
    std::uint64_t omega_ii() const { return omega_i() - omega_ic() - omega_il(); }
    double frac(std::uint64_t count) const {
        return subblocks ? static_cast<double>(count) / static_cast<double>(subblocks) : 0.0;
    }
};

struct SubblockOutcome {
    Sap true_sap;
    std::vector<std::uint8_t> true_bits;
    DetectionResult ml, klv, subml;
    std::vector<std::uint8_t> ml_bits, klv_bits, subml_bits;
    OmegaLabel label;
};

struct TrialRecord {
    std::uint64_t trial_index = 0;
    double snr_db = 0.0;
    std::vector<SubblockOutcome> subblocks;
};

/// Simulates single trials (one frame each) with reusable scratch storage.
/// All three detectors consume the same metrics per subblock, so their
/// outcomes are paired. One runner per worker thread.
class TrialRunner {
  public:
    explicit TrialRunner(const MonteCarloConfig& config);

    /// Simulates one trial and accumulates into the tally.
    void run(std::uint64_t trial_index, double snr_db, OutcomeTally& tally);
    /// Simulates one trial and copies the per-subblock records out.
    void collect(std::uint64_t trial_index, double snr_db, TrialRecord& out);

  private:
    void simulate(std::uint64_t trial_index, double snr_db);

    FrameConfig frame_;
    Constellation constellation_;
    SapDetector detector_;
    ChannelModel channel_model_;
    KBestSapStream stream_;
    FallbackPolicy fallback_;
    SnrMode snr_mode_;
    std::optional<double> sigma2_override_;
    int max_depth_;
    std::uint64_t master_seed_;

    std::vector<std::uint8_t> bits_;
    std::vector<cxd> x_, y_, r_;
    std::vector<cxd> rsub_, hsub_;
    ChannelRealization chan_;
    ActiveLikelihoods al_;
    TrialRecord scratch_;
};

/// One-off trial for inspection; equivalent to TrialRunner::collect.
TrialRecord run_trial(std::uint64_t trial_index, double snr_db, const MonteCarloConfig& config);

/// Runs trials_per_point trials at one SNR point, possibly across workers.
OutcomeTally estimate(const MonteCarloConfig& config, double snr_db);

struct SweepResult {
    std::vector<double> snr_db;
    std::vector<OutcomeTally> points;
};

/// estimate() at every grid point; progress(index, snr_db) fires before
/// each point when provided.
SweepResult sweep(const MonteCarloConfig& config,
                  const std::function<void(int, double)>& progress = nullptr);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // statistical allowance added to rhs
    bool pass = false;
};

struct BoundReport {
    double snr_db = 0.0;
    double r = 0.0;  // illegal-to-incorrect SAP ratio
    std::vector<BoundCheck> checks;
    bool all_pass() const;
};

/// Evaluates the detector-ordering identities and the two probability-gap
/// bounds on one tally. Gap bounds pass when lhs <= rhs + slack, with slack
/// the quadrature sum of the Wilson half-widths of every estimate involved.
BoundReport check_bounds(const OutcomeTally& tally, const SubblockParams& params, double snr_db);
std::vector<BoundReport> check_bounds(const SweepResult& result, const SubblockParams& params);

}  // namespace ofdmim
