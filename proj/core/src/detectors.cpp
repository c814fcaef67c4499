#include "ofdmim/detectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ofdmim {

void compute_metrics(std::span<const cxd> r, std::span<const cxd> h,
                     const Constellation& constellation, ActiveLikelihoods& out) {
    if (r.size() != h.size()) throw std::invalid_argument("r / h length mismatch");
    const int n = static_cast<int>(r.size());
    out.a.resize(static_cast<std::size_t>(n));
    out.order.resize(static_cast<std::size_t>(n));
    out.shat.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (std::norm(h[i]) <= 0.0) throw std::domain_error("zero CFR in metric computation");
        const unsigned label = constellation.detect(r[i]);
        const cxd s = constellation.point(label);
        const double re = r[i].real() * s.real() + r[i].imag() * s.imag();  // Re{R* s}
        out.shat[i] = label;
        out.a[i] = std::norm(h[i]) * (2.0 * re - std::norm(s));
    }
    std::iota(out.order.begin(), out.order.end(), 0);
    std::sort(out.order.begin(), out.order.end(), [&](int x, int y) {
        if (out.a[x] != out.a[y]) return out.a[x] > out.a[y];
        return x < y;
    });
}

ActiveLikelihoods compute_metrics(std::span<const cxd> r, std::span<const cxd> h,
                                  const Constellation& constellation) {
    ActiveLikelihoods al;
    compute_metrics(r, h, constellation, al);
    return al;
}

KBestSapStream::KBestSapStream(const SubblockParams& params) : params_(params) {
    heap_.reserve(64);
    visited_.reserve(64);
}

void KBestSapStream::reset(const ActiveLikelihoods& al) {
    if (al.n() != params_.n()) throw std::invalid_argument("metric length mismatch");
    al_ = &al;
    heap_.clear();
    visited_.clear();
    const int k = params_.k();
    double sum = 0.0;
    for (int q = 0; q < k; ++q) sum += al.a[al.order[q]];
    const std::uint64_t root = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
    heap_.push_back(Node{sum, root});
    visited_.insert(root);
}

bool KBestSapStream::next(Item& out) {
    if (heap_.empty() || al_ == nullptr) return false;
    std::pop_heap(heap_.begin(), heap_.end(), NodeLess{});
    const Node top = heap_.back();
    heap_.pop_back();

    const int n = params_.n();
    for (std::uint64_t m = top.pos_mask; m != 0; m &= m - 1) {
        const int q = std::countr_zero(m);
        if (q + 1 >= n) continue;
        const std::uint64_t next_bit = 1ULL << (q + 1);
        if (top.pos_mask & next_bit) continue;
        const std::uint64_t child = (top.pos_mask ^ (1ULL << q)) | next_bit;
        if (!visited_.insert(child).second) continue;
        const double sum = top.sum - al_->a[al_->order[q]] + al_->a[al_->order[q + 1]];
        heap_.push_back(Node{sum, child});
        std::push_heap(heap_.begin(), heap_.end(), NodeLess{});
    }

    std::uint64_t subcarrier_mask = 0;
    for (std::uint64_t m = top.pos_mask; m != 0; m &= m - 1)
        subcarrier_mask |= 1ULL << al_->order[std::countr_zero(m)];
    out.sap = sap_from_mask(subcarrier_mask, params_);
    out.sum = top.sum;
    return true;
}

std::vector<KBestSapStream::Item> kth_best_saps(const ActiveLikelihoods& al,
                                                const SubblockParams& params,
                                                std::size_t max_items) {
    KBestSapStream stream(params);
    stream.reset(al);
    std::vector<KBestSapStream::Item> items;
    KBestSapStream::Item item;
    while (items.size() < max_items && stream.next(item)) items.push_back(item);
    return items;
}

SapDetector::SapDetector(SubblockParams params) : params_(params) {
    const std::uint64_t legal = params_.legal_count();
    const int k = params_.k();
    legal_.reserve(legal);
    legal_positions_.resize(legal * static_cast<std::size_t>(k));
    for (std::uint64_t rank = 0; rank < legal; ++rank) {
        legal_.push_back(sap_from_rank(rank, params_));
        std::uint64_t m = legal_.back().mask;
        for (int j = 0; j < k; ++j) {
            legal_positions_[rank * k + j] = static_cast<std::uint8_t>(std::countr_zero(m));
            m &= m - 1;
        }
    }
}

void SapDetector::fill_symbols(const ActiveLikelihoods& al, DetectionResult& out) const {
    out.symbol_labels.clear();
    for (std::uint64_t m = out.sap.mask; m != 0; m &= m - 1)
        out.symbol_labels.push_back(al.shat[std::countr_zero(m)]);
}

void SapDetector::ml_detect(const ActiveLikelihoods& al, DetectionResult& out) const {
    if (al.n() != params_.n()) throw std::invalid_argument("metric length mismatch");
    const int k = params_.k();
    std::uint64_t best_rank = 0;
    double best_sum = 0.0;
    for (std::uint64_t rank = 0; rank < legal_.size(); ++rank) {
        const std::uint8_t* pos = &legal_positions_[rank * k];
        double sum = 0.0;
        for (int j = 0; j < k; ++j) sum += al.a[pos[j]];
        if (rank == 0 || sum > best_sum) {
            best_sum = sum;
            best_rank = rank;
        }
    }
    out.sap = legal_[best_rank];
    out.detector = DetectorKind::ml;
    out.fallback_used = false;
    fill_symbols(al, out);
}

void SapDetector::klv_detect(const ActiveLikelihoods& al, DetectionResult& out) const {
    if (al.n() != params_.n()) throw std::invalid_argument("metric length mismatch");
    std::uint64_t mask = 0;
    for (int q = 0; q < params_.k(); ++q) mask |= 1ULL << al.order[q];
    out.sap = sap_from_mask(mask, params_);
    out.detector = DetectorKind::klv;
    out.fallback_used = !is_legal(out.sap, params_);
    fill_symbols(al, out);
}

void SapDetector::subml_detect(const ActiveLikelihoods& al, DetectionResult& out,
                               FallbackPolicy fallback) const {
    if (al.n() != params_.n()) throw std::invalid_argument("metric length mismatch");
    const int k = params_.k();
    std::uint64_t mask = 0;
    for (int q = 0; q < k; ++q) mask |= 1ULL << al.order[q];
    out.sap = sap_from_mask(mask, params_);
    out.detector = DetectorKind::subml;
    out.fallback_used = false;
    if (is_legal(out.sap, params_)) {
        fill_symbols(al, out);
        return;
    }
    // Second-best SAP: drop the k-th sorted index, take the (k+1)-th.
    mask ^= 1ULL << al.order[k - 1];
    mask |= 1ULL << al.order[k];
    out.sap = sap_from_mask(mask, params_);
    if (is_legal(out.sap, params_)) {
        fill_symbols(al, out);
        return;
    }
    if (fallback == FallbackPolicy::ml) {
        ml_detect(al, out);
        out.detector = DetectorKind::subml;
    } else {
        out.sap = legal_[0];
        fill_symbols(al, out);
    }
    out.fallback_used = true;
}

DetectionResult SapDetector::ml_detect(const ActiveLikelihoods& al) const {
    DetectionResult out;
    ml_detect(al, out);
    return out;
}

DetectionResult SapDetector::klv_detect(const ActiveLikelihoods& al) const {
    DetectionResult out;
    klv_detect(al, out);
    return out;
}

DetectionResult SapDetector::subml_detect(const ActiveLikelihoods& al,
                                          FallbackPolicy fallback) const {
    DetectionResult out;
    subml_detect(al, out, fallback);
    return out;
}

int SapDetector::default_label_depth(const SubblockParams& params) {
    const std::uint64_t worst = params.illegal_count() + 1;
    return static_cast<int>(std::min<std::uint64_t>(worst, 16));
}

OmegaLabel SapDetector::classify_outcome(const ActiveLikelihoods& al, const Sap& true_sap,
                                         KBestSapStream& scratch, int max_depth) const {
    if (!is_legal(true_sap, params_))
        throw std::invalid_argument("transmitted SAP must be legal");
    if (max_depth <= 0) max_depth = default_label_depth(params_);
    scratch.reset(al);
    KBestSapStream::Item item;
    for (int depth = 1; depth <= max_depth; ++depth) {
        if (!scratch.next(item)) throw std::logic_error("k-best stream exhausted early");
        if (is_legal(item.sap, params_))
            return OmegaLabel{depth, item.sap.mask == true_sap.mask, false};
    }
    return OmegaLabel{max_depth, false, true};
}

OmegaLabel SapDetector::classify_outcome(const ActiveLikelihoods& al, const Sap& true_sap,
                                         int max_depth) const {
    KBestSapStream scratch(params_);
    return classify_outcome(al, true_sap, scratch, max_depth);
}

void demap_result(const DetectionResult& result, const SubblockParams& params,
                  const Constellation& constellation, std::span<std::uint8_t> bits_out) {
    if (is_legal(result.sap, params)) {
        decode_subblock(result.sap, std::span<const unsigned>(result.symbol_labels), params,
                        constellation, bits_out);
        return;
    }
    const int p1 = params.index_bits();
    const int bps = constellation.bits_per_symbol();
    if (static_cast<int>(bits_out.size()) != params.bits_per_subblock())
        throw std::invalid_argument("output span must hold a full subblock of bits");
    for (int b = 0; b < p1; ++b) bits_out[b] = 0;  // rank-0 index bits
    int offset = p1;
    for (unsigned label : result.symbol_labels) {
        constellation.label_to_bits(label, bits_out.subspan(offset, bps));
        offset += bps;
    }
}

}  // namespace ofdmim
