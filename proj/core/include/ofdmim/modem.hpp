// Gray-mapped constellations and hard nearest-point symbol decisions.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ofdmim {

using cxd = std::complex<double>;

/// An M-ary constellation with Gray bit labels.
///
/// Points live on the unnormalized odd-integer grid (QPSK is {±1±j},
/// symbol energy 2).  Nothing downstream assumes unit energy: SNR
/// accounting always goes through avg_energy().
///
/// points()[m] is the point whose Gray label is the MSB-first integer m,
/// so modulation is a table lookup and the "lowest point index" decision
/// tie-break means lowest label value.
class Constellation {
public:
    /// QPSK with the frozen Gray table 00 -> 1+j, 01 -> -1+j,
    /// 11 -> -1-j, 10 -> 1-j.
    static Constellation qpsk();

    /// BPSK (M=2, {±1}) or square Gray QAM (M = 4, 16, 64, 256).
    /// Throws std::invalid_argument for other orders.
    static Constellation square_qam(int order);

    int order() const { return static_cast<int>(points_.size()); }
    int bits_per_symbol() const { return bits_per_symbol_; }
    double avg_energy() const { return avg_energy_; }
    std::span<const cxd> points() const { return points_; }
    cxd point(unsigned label) const { return points_[label]; }

    /// Map a bit group (MSB first) to its constellation point.
    cxd map_bits(std::span<const std::uint8_t> bits) const;
    /// Recover the bit group of a label (MSB first).
    void label_to_bits(unsigned label, std::span<std::uint8_t> out) const;

    /// Hard decision: label of the point nearest to r in Euclidean
    /// distance, ties broken by lowest label.
    unsigned detect(cxd r) const;

private:
    Constellation(std::vector<cxd> points, int bits_per_symbol);

    std::vector<cxd> points_;
    int bits_per_symbol_;
    double avg_energy_;
};

/// Bit group (MSB first) packed into an unsigned label.
unsigned bits_to_label(std::span<const std::uint8_t> bits);

}  // namespace ofdmim
