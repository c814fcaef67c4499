#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ofdmim/combin.hpp"
#include "ofdmim/modem.hpp"

namespace ofdmim {

/// Frame geometry: N subcarriers split into G interleaved subblocks of n each.
class FrameConfig {
  public:
    FrameConfig(int total_subcarriers, SubblockParams params);

    int total_subcarriers() const { return total_subcarriers_; }  // N
    int num_subblocks() const { return num_subblocks_; }          // G
    const SubblockParams& subblock() const { return params_; }

    /// m = p * G where p = p1 + p2 per subblock.
    int bits_per_frame() const { return params_.bits_per_subblock() * num_subblocks_; }

    /// 0-based frame position of element i (0-based) of subblock g (0-based):
    /// stride-G interleaving, position = g + i*G.
    int frame_position(int subblock, int element) const {
        return subblock + element * num_subblocks_;
    }

  private:
    int total_subcarriers_;
    int num_subblocks_;
    SubblockParams params_;
};

/// Length-n subblock vector: k active entries carry constellation points,
/// the rest are zero.
using SubblockSymbols = std::vector<cxd>;

/// Map p = p1 + p2 bits to one subblock: the first p1 bits, read MSB first,
/// select the SAP by rank; the remaining p2 bits modulate the k active
/// positions in increasing subcarrier order.
std::pair<Sap, SubblockSymbols> encode_subblock(std::span<const std::uint8_t> bits,
                                                const SubblockParams& params,
                                                const Constellation& constellation);

/// Inverse of encode_subblock for a legal SAP and k detected symbols listed
/// in increasing active-position order. Throws on an illegal SAP; callers
/// must apply their fallback policy first.
void decode_subblock(const Sap& sap, std::span<const cxd> symbols, const SubblockParams& params,
                     const Constellation& constellation, std::span<std::uint8_t> bits_out);

/// Same but from constellation labels, skipping the point lookup.
void decode_subblock(const Sap& sap, std::span<const unsigned> symbol_labels,
                     const SubblockParams& params, const Constellation& constellation,
                     std::span<std::uint8_t> bits_out);

/// Stride-G concatenation: subblock g (1-based) element i lands on frame
/// subcarrier g + (i-1)*G (1-based).
std::vector<cxd> interleave(const std::vector<SubblockSymbols>& subblocks,
                            const FrameConfig& config);

/// Exact inverse of interleave.
std::vector<SubblockSymbols> deinterleave(std::span<const cxd> frame, const FrameConfig& config);

}  // namespace ofdmim
