#include "ofdmim/modem.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ofdmim {

namespace {

unsigned gray_to_binary(unsigned g) {
    unsigned b = 0;
    for (; g != 0; g >>= 1) b ^= g;
    return b;
}

// Gray-labeled PAM amplitude for a t-bit axis label: label 0...0 maps to
// the largest positive level 2^t - 1, consecutive Gray codes step down
// by 2 through the odd levels to -(2^t - 1).
double pam_level(unsigned gray_label, int axis_bits) {
    const unsigned levels = 1u << axis_bits;
    const unsigned position = gray_to_binary(gray_label);
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(position);
}

}  // namespace

Constellation::Constellation(std::vector<cxd> points, int bits_per_symbol)
    : points_(std::move(points)), bits_per_symbol_(bits_per_symbol) {
    double e = 0.0;
    for (const cxd& p : points_) e += std::norm(p);
    avg_energy_ = e / static_cast<double>(points_.size());
}

Constellation Constellation::qpsk() { return square_qam(4); }

Constellation Constellation::square_qam(int order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("constellation order must be a power of 2, got " +
                                    std::to_string(order));
    const int bits = std::bit_width(static_cast<unsigned>(order)) - 1;

    if (order == 2) {
        // BPSK on the real axis: 0 -> +1, 1 -> -1.
        return Constellation({cxd{1.0, 0.0}, cxd{-1.0, 0.0}}, 1);
    }
    if (bits % 2 != 0)
        throw std::invalid_argument("only BPSK and square QAM are supported; M=" +
                                    std::to_string(order) + " has an odd bit count");
    if (order > 256)
        throw std::invalid_argument("constellation order too large (max 256)");

    // First half of the label drives the imaginary axis, second half the
    // real axis; both axes use the same Gray PAM.  For M=4 this yields
    // the frozen QPSK table 00 -> 1+j, 01 -> -1+j, 11 -> -1-j, 10 -> 1-j.
    const int axis_bits = bits / 2;
    const unsigned axis_mask = (1u << axis_bits) - 1;
    std::vector<cxd> pts(static_cast<std::size_t>(order));
    for (unsigned label = 0; label < static_cast<unsigned>(order); ++label) {
        const unsigned imag_gray = (label >> axis_bits) & axis_mask;
        const unsigned real_gray = label & axis_mask;
        pts[label] = cxd{pam_level(real_gray, axis_bits), pam_level(imag_gray, axis_bits)};
    }
    return Constellation(std::move(pts), bits);
}

cxd Constellation::map_bits(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != bits_per_symbol_)
        throw std::invalid_argument("expected " + std::to_string(bits_per_symbol_) +
                                    " bits per symbol, got " + std::to_string(bits.size()));
    return points_[bits_to_label(bits)];
}

void Constellation::label_to_bits(unsigned label, std::span<std::uint8_t> out) const {
    assert(static_cast<int>(out.size()) == bits_per_symbol_);
    for (int b = 0; b < bits_per_symbol_; ++b)
        out[b] = static_cast<std::uint8_t>((label >> (bits_per_symbol_ - 1 - b)) & 1u);
}

unsigned Constellation::detect(cxd r) const {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw std::invalid_argument("non-finite sample in symbol detection");
    unsigned best = 0;
    double best_d = std::norm(r - points_[0]);
    for (unsigned m = 1; m < points_.size(); ++m) {
        const double d = std::norm(r - points_[m]);
        if (d < best_d) {
            best_d = d;
            best = m;
        }
    }
    return best;
}

unsigned bits_to_label(std::span<const std::uint8_t> bits) {
    unsigned v = 0;
    for (std::uint8_t b : bits) v = (v << 1) | (b & 1u);
    return v;
}

}  // namespace ofdmim
