#include "ofdmim/combin.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace ofdmim {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

SubblockParams::SubblockParams(int n, int k, int mod_order)
    : n_(n), k_(k), mod_order_(mod_order) {
    if (n < 2)
        throw std::invalid_argument("subblock size n must be >= 2, got " + std::to_string(n));
    if (k < 1 || k >= n)
        throw std::invalid_argument("active count k must satisfy 1 <= k < n, got k=" +
                                    std::to_string(k) + " for n=" + std::to_string(n));
    if (n > 64)
        throw std::invalid_argument("subblock size n must be <= 64 (bitmask SAP representation)");
    if (!is_power_of_two(mod_order))
        throw std::invalid_argument("constellation order M must be a power of 2, got " +
                                    std::to_string(mod_order));

    // Pascal table C(a,b) for a <= n, b <= k, with overflow detection.
    binom_.assign(static_cast<std::size_t>(n + 1) * (k + 1), 0);
    auto at = [this](int a, int b) -> std::uint64_t& {
        return binom_[static_cast<std::size_t>(a) * (k_ + 1) + b];
    };
    for (int a = 0; a <= n; ++a) {
        at(a, 0) = 1;
        for (int b = 1; b <= std::min(a, k); ++b) {
            std::uint64_t lo = at(a - 1, b - 1);
            std::uint64_t hi = (b <= a - 1) ? at(a - 1, b) : 0;
            std::uint64_t sum = lo + hi;
            if (sum < lo)
                throw std::invalid_argument("C(n,k) overflows 64 bits for n=" +
                                            std::to_string(n) + ", k=" + std::to_string(k));
            at(a, b) = sum;
        }
    }

    index_bits_ = std::bit_width(pattern_count()) - 1;  // floor(log2 C(n,k))
    symbol_bits_ = k * (std::bit_width(static_cast<unsigned>(mod_order)) - 1);
}

std::uint64_t SubblockParams::choose(int a, int b) const {
    assert(a >= 0 && a <= n_ && b >= 0 && b <= k_);
    if (b > a) return 0;
    return binom_[static_cast<std::size_t>(a) * (k_ + 1) + b];
}

double SubblockParams::illegal_ratio() const {
    const std::uint64_t total = pattern_count();
    return static_cast<double>(total - legal_count()) / static_cast<double>(total - 1);
}

std::vector<int> Sap::indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
        out.push_back(std::countr_zero(m) + 1);
    return out;
}

Sap sap_from_rank(std::uint64_t rank, const SubblockParams& params) {
    if (rank >= params.pattern_count())
        throw std::out_of_range("SAP rank " + std::to_string(rank) + " >= C(n,k) = " +
                                std::to_string(params.pattern_count()));
    const int n = params.n();
    const int k = params.k();
    std::uint64_t mask = 0;
    std::uint64_t remaining = rank;
    int c = 1;  // candidate subcarrier for the next position
    for (int j = 1; j <= k; ++j) {
        // Number of completions when position j takes candidate c is C(n-c, k-j).
        for (;; ++c) {
            const std::uint64_t completions = params.choose(n - c, k - j);
            if (remaining < completions) break;
            remaining -= completions;
        }
        mask |= std::uint64_t{1} << (c - 1);
        ++c;
    }
    return Sap{mask, rank};
}

std::uint64_t rank_of_mask(std::uint64_t mask, const SubblockParams& params) {
    const int n = params.n();
    const int k = params.k();
    std::uint64_t rank = 0;
    int j = 1;
    int prev = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1, ++j) {
        const int c = std::countr_zero(m) + 1;
        for (int skipped = prev + 1; skipped < c; ++skipped)
            rank += params.choose(n - skipped, k - j);
        prev = c;
    }
    return rank;
}

Sap sap_from_mask(std::uint64_t mask, const SubblockParams& params) {
    if (std::popcount(mask) != params.k())
        throw std::invalid_argument("SAP mask must select exactly k subcarriers");
    if (params.n() < 64 && (mask >> params.n()) != 0)
        throw std::invalid_argument("SAP mask selects subcarriers beyond n");
    return Sap{mask, rank_of_mask(mask, params)};
}

Sap sap_from_indices(std::span<const int> indices, const SubblockParams& params) {
    std::uint64_t mask = 0;
    for (int i : indices) {
        if (i < 1 || i > params.n())
            throw std::invalid_argument("SAP index " + std::to_string(i) + " outside 1..n");
        const std::uint64_t bit = std::uint64_t{1} << (i - 1);
        if (mask & bit)
            throw std::invalid_argument("duplicate SAP index " + std::to_string(i));
        mask |= bit;
    }
    return sap_from_mask(mask, params);
}

}  // namespace ofdmim
