#include "ofdmim/transceiver.hpp"

#include <stdexcept>
#include <string>

namespace ofdmim {

FrameConfig::FrameConfig(int total_subcarriers, SubblockParams params)
    : total_subcarriers_(total_subcarriers),
      num_subblocks_(0),
      params_(params) {
    if (total_subcarriers <= 0)
        throw std::invalid_argument("frame size must be positive");
    if (total_subcarriers % params.n() != 0)
        throw std::invalid_argument("frame size " + std::to_string(total_subcarriers) +
                                    " is not a multiple of the subblock length " +
                                    std::to_string(params.n()));
    num_subblocks_ = total_subcarriers / params.n();
}

std::pair<Sap, SubblockSymbols> encode_subblock(std::span<const std::uint8_t> bits,
                                                const SubblockParams& params,
                                                const Constellation& constellation) {
    const int p1 = params.index_bits();
    const int p2 = params.symbol_bits();
    if (static_cast<int>(bits.size()) != p1 + p2)
        throw std::invalid_argument("expected " + std::to_string(p1 + p2) +
                                    " bits per subblock, got " + std::to_string(bits.size()));
    if (constellation.order() != params.mod_order())
        throw std::invalid_argument("constellation order does not match subblock parameters");

    std::uint64_t rank = 0;
    for (int b = 0; b < p1; ++b) rank = (rank << 1) | (bits[b] & 1u);
    const Sap sap = sap_from_rank(rank, params);

    SubblockSymbols x(static_cast<std::size_t>(params.n()), cxd{0.0, 0.0});
    const int bps = constellation.bits_per_symbol();
    int offset = p1;
    for (int i = 0; i < params.n(); ++i) {
        if (!sap.contains(i + 1)) continue;
        x[i] = constellation.map_bits(bits.subspan(offset, bps));
        offset += bps;
    }
    return {sap, std::move(x)};
}

namespace {

void write_index_bits(const Sap& sap, const SubblockParams& params,
                      std::span<std::uint8_t> bits_out) {
    const int p1 = params.index_bits();
    const int p2 = params.symbol_bits();
    if (static_cast<int>(bits_out.size()) != p1 + p2)
        throw std::invalid_argument("output span must hold " + std::to_string(p1 + p2) + " bits");
    if (!is_legal(sap, params))
        throw std::invalid_argument("cannot decode an illegal SAP (rank " +
                                    std::to_string(sap.rank) + ")");
    for (int b = 0; b < p1; ++b)
        bits_out[b] = static_cast<std::uint8_t>((sap.rank >> (p1 - 1 - b)) & 1u);
}

}  // namespace

void decode_subblock(const Sap& sap, std::span<const unsigned> symbol_labels,
                     const SubblockParams& params, const Constellation& constellation,
                     std::span<std::uint8_t> bits_out) {
    if (static_cast<int>(symbol_labels.size()) != params.k())
        throw std::invalid_argument("expected " + std::to_string(params.k()) + " symbols");
    write_index_bits(sap, params, bits_out);
    const int bps = constellation.bits_per_symbol();
    int offset = params.index_bits();
    for (unsigned label : symbol_labels) {
        constellation.label_to_bits(label, bits_out.subspan(offset, bps));
        offset += bps;
    }
}

void decode_subblock(const Sap& sap, std::span<const cxd> symbols, const SubblockParams& params,
                     const Constellation& constellation, std::span<std::uint8_t> bits_out) {
    if (static_cast<int>(symbols.size()) != params.k())
        throw std::invalid_argument("expected " + std::to_string(params.k()) + " symbols");
    std::vector<unsigned> labels(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) labels[i] = constellation.detect(symbols[i]);
    decode_subblock(sap, std::span<const unsigned>(labels), params, constellation, bits_out);
}

std::vector<cxd> interleave(const std::vector<SubblockSymbols>& subblocks,
                            const FrameConfig& config) {
    const int g_count = config.num_subblocks();
    const int n = config.subblock().n();
    if (static_cast<int>(subblocks.size()) != g_count)
        throw std::invalid_argument("expected " + std::to_string(g_count) + " subblocks");
    std::vector<cxd> frame(static_cast<std::size_t>(config.total_subcarriers()));
    for (int g = 0; g < g_count; ++g) {
        if (static_cast<int>(subblocks[g].size()) != n)
            throw std::invalid_argument("subblock " + std::to_string(g + 1) +
                                        " has the wrong length");
        for (int i = 0; i < n; ++i) frame[config.frame_position(g, i)] = subblocks[g][i];
    }
    return frame;
}

std::vector<SubblockSymbols> deinterleave(std::span<const cxd> frame, const FrameConfig& config) {
    if (static_cast<int>(frame.size()) != config.total_subcarriers())
        throw std::invalid_argument("frame length mismatch");
    const int g_count = config.num_subblocks();
    const int n = config.subblock().n();
    std::vector<SubblockSymbols> out(static_cast<std::size_t>(g_count));
    for (int g = 0; g < g_count; ++g) {
        out[g].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out[g][i] = frame[config.frame_position(g, i)];
    }
    return out;
}

}  // namespace ofdmim
