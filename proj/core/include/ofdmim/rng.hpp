#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "ofdmim/modem.hpp"

namespace ofdmim {

/// Finalizer of the splitmix64 generator; bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Self-contained random stream for one Monte Carlo trial. Streams are
/// derived from (master_seed, trial_index) only, so every trial is
/// reproducible regardless of scheduling, and the same bit/channel/noise
/// draws are shared across SNR points (common random numbers).
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

    static TrialRng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return TrialRng(splitmix64(splitmix64(master_seed) ^ trial_index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method; pairs are cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    /// Circularly symmetric complex normal with E|z|^2 = total_variance.
    cxd cnormal(double total_variance) {
        const double scale = std::sqrt(0.5 * total_variance);
        const double re = scale * gaussian();
        const double im = scale * gaussian();
        return cxd{re, im};
    }

    /// One fair bit; draws are buffered 64 at a time.
    std::uint8_t bit() {
        if (bit_count_ == 0) {
            bit_buffer_ = engine_();
            bit_count_ = 64;
        }
        const std::uint8_t b = static_cast<std::uint8_t>(bit_buffer_ & 1u);
        bit_buffer_ >>= 1;
        --bit_count_;
        return b;
    }

    void fill_bits(std::span<std::uint8_t> out) {
        for (std::uint8_t& b : out) b = bit();
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
    std::uint64_t bit_buffer_ = 0;
    int bit_count_ = 0;
};

}  // namespace ofdmim
