// Exact combinatorics for subcarrier activation patterns (SAPs):
// parameter derivation, lexicographic combinadic ranking/unranking,
// legality testing and the illegal-SAP ratio.
#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace ofdmim {

/// Per-subblock index-modulation parameters: n subcarriers, k of them
/// active, M-ary symbols on the active ones.
///
/// The pattern for a subblock is addressed by p1 = floor(log2 C(n,k))
/// bits; the remaining p2 = k*log2(M) bits select symbols.  Binomials
/// are carried as an exact uint64 Pascal table; parameter sets whose
/// table would overflow are rejected (construction throws).
class SubblockParams {
public:
    SubblockParams(int n, int k, int mod_order);

    int n() const { return n_; }
    int k() const { return k_; }
    int mod_order() const { return mod_order_; }
    int index_bits() const { return index_bits_; }    // p1
    int symbol_bits() const { return symbol_bits_; }  // p2
    int bits_per_subblock() const { return index_bits_ + symbol_bits_; }

    /// C(n,k), exact.
    std::uint64_t pattern_count() const { return choose(n_, k_); }
    /// 2^p1, the number of addressable (legal) patterns.
    std::uint64_t legal_count() const { return std::uint64_t{1} << index_bits_; }
    std::uint64_t illegal_count() const { return pattern_count() - legal_count(); }

    /// Exact C(a,b) for 0 <= a <= n, 0 <= b <= k; 0 when b > a.
    std::uint64_t choose(int a, int b) const;

    /// Ratio of illegal SAPs to all incorrect SAPs,
    /// (C(n,k) - 2^p1) / (C(n,k) - 1).
    double illegal_ratio() const;

    friend bool operator==(const SubblockParams& a, const SubblockParams& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.mod_order_ == b.mod_order_;
    }

private:
    int n_, k_, mod_order_;
    int index_bits_, symbol_bits_;
    std::vector<std::uint64_t> binom_;  // (n+1) x (k+1) row-major Pascal table
};

/// A subcarrier activation pattern: k active indices out of 1..n, stored
/// as a bitmask (bit i-1 <=> subcarrier i active) together with its
/// position in the lexicographic combinadic order of all k-subsets.
/// A pattern is legal iff rank < 2^p1.
struct Sap {
    std::uint64_t mask = 0;
    std::uint64_t rank = 0;

    int count() const { return std::popcount(mask); }
    bool contains(int subcarrier) const {  // 1-based
        return (mask >> (subcarrier - 1)) & 1u;
    }
    /// Active subcarrier indices, ascending, 1-based.
    std::vector<int> indices() const;

    friend bool operator==(const Sap&, const Sap&) = default;
};

/// Unrank: the k-subset at lexicographic position `rank`.
/// Throws std::out_of_range unless rank < C(n,k).
Sap sap_from_rank(std::uint64_t rank, const SubblockParams& params);

/// Build a Sap from an activation bitmask, computing its rank.
/// Throws std::invalid_argument unless the mask picks exactly k
/// subcarriers of 1..n.
Sap sap_from_mask(std::uint64_t mask, const SubblockParams& params);

/// Build a Sap from 1-based indices (need not be sorted; duplicates rejected).
Sap sap_from_indices(std::span<const int> indices, const SubblockParams& params);

/// Rank of an activation mask without constructing a Sap.
std::uint64_t rank_of_mask(std::uint64_t mask, const SubblockParams& params);

inline bool is_legal(const Sap& sap, const SubblockParams& params) {
    return sap.rank < params.legal_count();
}

}  // namespace ofdmim
