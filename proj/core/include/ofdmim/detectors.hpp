#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "ofdmim/combin.hpp"
#include "ofdmim/modem.hpp"
#include "ofdmim/transceiver.hpp"

namespace ofdmim {

/// Per-subcarrier active-likelihood metrics for one received subblock.
/// a[i] = |H_i|^2 (2 Re{R_i* s_i} - |s_i|^2) with s_i the hard symbol
/// decision on R_i; order lists 0-based subcarrier indices by descending
/// metric, ties broken by ascending index.
struct ActiveLikelihoods {
    std::vector<double> a;
    std::vector<int> order;
    std::vector<unsigned> shat;  // detected symbol label per subcarrier

    int n() const { return static_cast<int>(a.size()); }
};

void compute_metrics(std::span<const cxd> r, std::span<const cxd> h,
                     const Constellation& constellation, ActiveLikelihoods& out);
ActiveLikelihoods compute_metrics(std::span<const cxd> r, std::span<const cxd> h,
                                  const Constellation& constellation);

enum class DetectorKind { ml, klv, subml };

/// What subml returns when both the best and the second-best SAP are
/// illegal: the rank-0 SAP (cheap, deterministic) or a full ML pass.
enum class FallbackPolicy { default_sap, ml };

struct DetectionResult {
    Sap sap;
    std::vector<unsigned> symbol_labels;  // at active positions, ascending
    DetectorKind detector = DetectorKind::ml;
    bool fallback_used = false;
};

/// Sample-space label of one received subblock: the first legal SAP in the
/// k-best order sits at position `depth`; `correct` says whether it equals
/// the transmitted SAP. `overflow` marks a walk cut off at the depth cap
/// before any legal SAP appeared (terminal unknown).
struct OmegaLabel {
    int depth = 1;
    bool correct = false;
    bool overflow = false;
};

/// Lazily yields all C(n,k) activation patterns in non-increasing order of
/// their metric sums. Best-first search over the sorted-metric position
/// lattice: the root selects sorted positions {0..k-1}; a successor moves
/// one selected position right by one. Item 1 is the klv pattern and item 2
/// is always {i_1,...,i_(k-1), i_(k+1)} in sorted order. Reusable via
/// reset(); the bound metrics must outlive the iteration.
class KBestSapStream {
  public:
    explicit KBestSapStream(const SubblockParams& params);

    struct Item {
        Sap sap;
        double sum = 0.0;
    };

    void reset(const ActiveLikelihoods& al);
    /// Yields the next pattern; false once all C(n,k) have been produced.
    bool next(Item& out);

  private:
    struct Node {
        double sum;
        std::uint64_t pos_mask;  // selected positions in sorted-metric space
    };
    struct NodeLess {
        bool operator()(const Node& x, const Node& y) const {
            if (x.sum != y.sum) return x.sum < y.sum;
            return x.pos_mask > y.pos_mask;  // ties: smaller position mask first
        }
    };

    SubblockParams params_;
    const ActiveLikelihoods* al_ = nullptr;
    std::vector<Node> heap_;
    std::unordered_set<std::uint64_t> visited_;
};

/// Convenience wrapper materializing the stream (tests, demos).
std::vector<KBestSapStream::Item> kth_best_saps(const ActiveLikelihoods& al,
                                                const SubblockParams& params,
                                                std::size_t max_items = SIZE_MAX);

/// The three SAP detectors over one subblock's metrics, sharing a
/// precomputed table of legal patterns. Detection methods are const and
/// thread-safe; out-parameter forms reuse the result's storage.
class SapDetector {
  public:
    explicit SapDetector(SubblockParams params);

    const SubblockParams& params() const { return params_; }

    /// Exhaustive scan of all 2^p1 legal patterns for the maximum metric
    /// sum; equal sums resolve to the lowest rank.
    void ml_detect(const ActiveLikelihoods& al, DetectionResult& out) const;
    /// Top-k metric positions; may be illegal (fallback_used marks the
    /// bit-demapping fallback).
    void klv_detect(const ActiveLikelihoods& al, DetectionResult& out) const;
    /// Best SAP if legal, else second-best if legal, else the fallback
    /// policy with fallback_used set.
    void subml_detect(const ActiveLikelihoods& al, DetectionResult& out,
                      FallbackPolicy fallback = FallbackPolicy::default_sap) const;

    DetectionResult ml_detect(const ActiveLikelihoods& al) const;
    DetectionResult klv_detect(const ActiveLikelihoods& al) const;
    DetectionResult subml_detect(const ActiveLikelihoods& al,
                                 FallbackPolicy fallback = FallbackPolicy::default_sap) const;

    /// Walks the k-best stream until the first legal SAP, up to max_depth
    /// items (0 selects the default cap). `scratch` forms avoid rebuilding
    /// stream state per call.
    OmegaLabel classify_outcome(const ActiveLikelihoods& al, const Sap& true_sap,
                                KBestSapStream& scratch, int max_depth = 0) const;
    OmegaLabel classify_outcome(const ActiveLikelihoods& al, const Sap& true_sap,
                                int max_depth = 0) const;

    /// min(C(n,k) - 2^p1 + 1, 16): the worst-case depth of the first legal
    /// SAP, capped so pathological walks stay bounded.
    static int default_label_depth(const SubblockParams& params);

    bool is_legal_mask(std::uint64_t mask) const {
        return rank_of_mask(mask, params_) < params_.legal_count();
    }
    const Sap& legal_sap(std::uint64_t rank) const { return legal_[rank]; }

  private:
    void fill_symbols(const ActiveLikelihoods& al, DetectionResult& out) const;

    SubblockParams params_;
    std::vector<Sap> legal_;
    std::vector<std::uint8_t> legal_positions_;  // 2^p1 rows of k 0-based indices
};

/// Recovers the p transmitted bits from a detection result. Legal SAPs
/// invert the subblock encoding; an illegal klv SAP falls back to rank-0
/// index bits while keeping the symbol bits detected at the chosen
/// positions.
void demap_result(const DetectionResult& result, const SubblockParams& params,
                  const Constellation& constellation, std::span<std::uint8_t> bits_out);

}  // namespace ofdmim
