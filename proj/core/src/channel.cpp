#include "ofdmim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ofdmim {

namespace {
constexpr double kCfrFloor = 1e-12;
}

PowerDelayProfile PowerDelayProfile::exponential(int length) {
    if (length < 1) throw std::invalid_argument("profile length must be positive");
    PowerDelayProfile pdp;
    pdp.tap_powers.resize(static_cast<std::size_t>(length));
    double total = 0.0;
    for (int t = 0; t < length; ++t) {
        pdp.tap_powers[t] = std::exp(-static_cast<double>(t));
        total += pdp.tap_powers[t];
    }
    for (double& p : pdp.tap_powers) p /= total;
    return pdp;
}

PowerDelayProfile PowerDelayProfile::single_tap() {
    PowerDelayProfile pdp;
    pdp.tap_powers = {1.0};
    return pdp;
}

void PowerDelayProfile::validate() const {
    if (tap_powers.empty()) throw std::invalid_argument("power-delay profile is empty");
    double total = 0.0;
    for (double p : tap_powers) {
        if (!(p >= 0.0)) throw std::invalid_argument("tap powers must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("tap powers must sum to 1, got " + std::to_string(total));
}

double sigma2_for_snr(double snr_db, double avg_energy, SnrMode mode,
                      const SubblockParams& params) {
    if (avg_energy <= 0.0) throw std::invalid_argument("average symbol energy must be positive");
    double energy = avg_energy;
    if (mode == SnrMode::eb_n0) {
        // Energy per information bit: a subblock spends k*Es to carry p bits.
        energy *= static_cast<double>(params.k()) /
                  static_cast<double>(params.bits_per_subblock());
    }
    return energy / (2.0 * std::pow(10.0, snr_db / 10.0));
}

NoiseSpec noise_for_snr(double snr_db, double avg_energy, SnrMode mode,
                        const SubblockParams& params) {
    return NoiseSpec{sigma2_for_snr(snr_db, avg_energy, mode, params), snr_db};
}

ChannelModel::ChannelModel(PowerDelayProfile pdp, int num_subcarriers)
    : pdp_(std::move(pdp)), num_subcarriers_(num_subcarriers) {
    pdp_.validate();
    if (num_subcarriers < 1) throw std::invalid_argument("subcarrier count must be positive");
    const int taps = pdp_.length();
    if (taps > num_subcarriers)
        throw std::invalid_argument("more channel taps than subcarriers");
    twiddle_.resize(static_cast<std::size_t>(num_subcarriers) * taps);
    for (int i = 0; i < num_subcarriers; ++i) {
        for (int t = 0; t < taps; ++t) {
            const double phase =
                -2.0 * std::numbers::pi * static_cast<double>(i) * t / num_subcarriers;
            twiddle_[static_cast<std::size_t>(i) * taps + t] =
                cxd{std::cos(phase), std::sin(phase)};
        }
    }
}

void ChannelModel::sample(TrialRng& rng, ChannelRealization& out) const {
    const int taps = pdp_.length();
    out.taps.resize(static_cast<std::size_t>(taps));
    out.cfr.resize(static_cast<std::size_t>(num_subcarriers_));
    for (;;) {
        for (int t = 0; t < taps; ++t) out.taps[t] = rng.cnormal(pdp_.tap_powers[t]);
        bool degenerate = false;
        for (int i = 0; i < num_subcarriers_; ++i) {
            const cxd* row = &twiddle_[static_cast<std::size_t>(i) * taps];
            cxd h{0.0, 0.0};
            for (int t = 0; t < taps; ++t) h += out.taps[t] * row[t];
            out.cfr[i] = h;
            if (std::norm(h) < kCfrFloor * kCfrFloor) degenerate = true;
        }
        if (!degenerate) return;
    }
}

ChannelRealization sample_channel(TrialRng& rng, const PowerDelayProfile& pdp,
                                  int num_subcarriers) {
    ChannelModel model(pdp, num_subcarriers);
    ChannelRealization out;
    model.sample(rng, out);
    return out;
}

void apply_channel(std::span<const cxd> x, const ChannelRealization& chan, const NoiseSpec& noise,
                   TrialRng& rng, std::span<cxd> y_out) {
    if (x.size() != chan.cfr.size() || y_out.size() != x.size())
        throw std::invalid_argument("frame / channel dimension mismatch");
    if (noise.sigma2 < 0.0) throw std::invalid_argument("noise variance must be nonnegative");
    if (noise.sigma2 == 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) y_out[i] = chan.cfr[i] * x[i];
        return;
    }
    const double total_variance = 2.0 * noise.sigma2;
    for (std::size_t i = 0; i < x.size(); ++i)
        y_out[i] = chan.cfr[i] * x[i] + rng.cnormal(total_variance);
}

std::vector<cxd> apply_channel(std::span<const cxd> x, const ChannelRealization& chan,
                               const NoiseSpec& noise, TrialRng& rng) {
    std::vector<cxd> y(x.size());
    apply_channel(x, chan, noise, rng, y);
    return y;
}

void equalize(std::span<const cxd> y, const ChannelRealization& chan, std::span<cxd> r_out) {
    if (y.size() != chan.cfr.size() || r_out.size() != y.size())
        throw std::invalid_argument("frame / channel dimension mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::norm(chan.cfr[i]) < kCfrFloor * kCfrFloor)
            throw std::domain_error("degenerate channel: |H| below floor");
        r_out[i] = y[i] / chan.cfr[i];
    }
}

std::vector<cxd> equalize(std::span<const cxd> y, const ChannelRealization& chan) {
    std::vector<cxd> r(y.size());
    equalize(y, chan, r);
    return r;
}

}  // namespace ofdmim
