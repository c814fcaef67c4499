#pragma once

#include <span>
#include <vector>

#include "ofdmim/combin.hpp"
#include "ofdmim/modem.hpp"
#include "ofdmim/rng.hpp"

namespace ofdmim {

/// Tap powers p_t of a frequency-selective channel, normalized to unit sum.
struct PowerDelayProfile {
    std::vector<double> tap_powers;

    /// p_t proportional to e^(-t), t = 0..length-1.
    static PowerDelayProfile exponential(int length = 8);
    /// Single unit-power tap (flat fading across the band).
    static PowerDelayProfile single_tap();

    int length() const { return static_cast<int>(tap_powers.size()); }
    void validate() const;
};

/// One channel draw: L complex taps and the N-point CFR
/// H_i = sum_t h_t exp(-j 2 pi (i-1) t / N).
struct ChannelRealization {
    std::vector<cxd> taps;
    std::vector<cxd> cfr;
};

/// Per-dimension noise variance and the SNR it was derived from. Complex
/// noise is CN(0, 2 sigma2): real and imaginary parts each have variance
/// sigma2.
struct NoiseSpec {
    double sigma2 = 0.0;
    double snr_db = 0.0;
};

enum class SnrMode { es_n0, eb_n0 };

/// sigma2 = avg_energy / (2 * 10^(snr_db/10)) in Es/N0 mode; the Eb/N0 mode
/// scales the per-symbol energy by k/p (bits carried per active subcarrier).
double sigma2_for_snr(double snr_db, double avg_energy, SnrMode mode, const SubblockParams& params);

NoiseSpec noise_for_snr(double snr_db, double avg_energy, SnrMode mode,
                        const SubblockParams& params);

/// Rayleigh channel sampler with a precomputed DFT twiddle table.
class ChannelModel {
  public:
    ChannelModel(PowerDelayProfile pdp, int num_subcarriers);

    /// Draws h_t ~ CN(0, p_t) and fills the CFR. Realizations with any
    /// |H_i| < 1e-12 are resampled rather than risking a divide blowup.
    void sample(TrialRng& rng, ChannelRealization& out) const;

    const PowerDelayProfile& pdp() const { return pdp_; }
    int num_subcarriers() const { return num_subcarriers_; }

  private:
    PowerDelayProfile pdp_;
    int num_subcarriers_;
    std::vector<cxd> twiddle_;  // row i holds exp(-j 2 pi i t / N), t = 0..L-1
};

ChannelRealization sample_channel(TrialRng& rng, const PowerDelayProfile& pdp,
                                  int num_subcarriers);

/// y_i = H_i x_i + z_i with z_i ~ CN(0, 2 sigma2).
void apply_channel(std::span<const cxd> x, const ChannelRealization& chan, const NoiseSpec& noise,
                   TrialRng& rng, std::span<cxd> y_out);
std::vector<cxd> apply_channel(std::span<const cxd> x, const ChannelRealization& chan,
                               const NoiseSpec& noise, TrialRng& rng);

/// r_i = y_i / H_i (zero-forcing equalization, perfect CSI).
void equalize(std::span<const cxd> y, const ChannelRealization& chan, std::span<cxd> r_out);
std::vector<cxd> equalize(std::span<const cxd> y, const ChannelRealization& chan);

}  // namespace ofdmim
