// Acceptance suite for the OFDM-IM detector toolkit.
//
// Each criterion prints one PASS/FAIL line followed by indented evidence
// lines. The process exit code is the number of failed criteria, so a zero
// exit means the whole suite is green. Criteria are evaluated against live
// simulation output produced in this process; the two preset sweeps are run
// once and shared by the criteria that need them.
//
// Known-red subchecks are implemented faithfully rather than loosened; the
// evidence lines carry the measured numbers so a reader can audit the gap.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ofdmim/channel.hpp"
#include "ofdmim/combin.hpp"
#include "ofdmim/detectors.hpp"
#include "ofdmim/modem.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/report.hpp"
#include "ofdmim/rng.hpp"
#include "ofdmim/runconfig.hpp"
#include "ofdmim/stats.hpp"
#include "ofdmim/transceiver.hpp"

using namespace ofdmim;

namespace {

std::string strf(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct Criterion {
    int id = 0;
    std::string title;
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string& what) { lines.push_back("      " + what); }
};

double rel_dev(double measured, double expected) {
    return std::fabs(measured - expected) / std::fabs(expected);
}

// ---------------------------------------------------------------- criterion 1

void criterion_ratios(Criterion& c) {
    const SubblockParams p84(8, 4, 4);
    const SubblockParams p105(10, 5, 4);

    c.check(p84.pattern_count() == 70 && p84.legal_count() == 64 && p84.illegal_count() == 6,
            "(8,4): C(8,4) = 70, legal 64, illegal 6");
    c.check(p84.illegal_ratio() == 6.0 / 69.0,
            strf("(8,4): illegal_ratio == 6/69 exactly (%.17g)", p84.illegal_ratio()));
    c.check(std::fabs(p84.illegal_ratio() - 0.086) < 1e-3,
            strf("(8,4): within one unit of the printed 0.086 (diff %.2e)",
                 std::fabs(p84.illegal_ratio() - 0.086)));

    c.check(p105.pattern_count() == 252 && p105.legal_count() == 128 && p105.illegal_count() == 124,
            "(10,5): C(10,5) = 252, legal 128, illegal 124");
    c.check(p105.illegal_ratio() == 124.0 / 251.0,
            strf("(10,5): illegal_ratio == 124/251 exactly (%.17g)", p105.illegal_ratio()));
    c.check(std::fabs(p105.illegal_ratio() - 0.49) < 5e-3,
            strf("(10,5): within half a unit of the printed 0.49 (diff %.2e)",
                 std::fabs(p105.illegal_ratio() - 0.49)));
}

// ---------------------------------------------------------------- criterion 2

void criterion_joint_oracle(Criterion& c) {
    const Constellation qpsk = Constellation::qpsk();
    const int configs[][2] = {{4, 2}, {4, 3}, {5, 2}, {5, 3}, {6, 2}, {6, 3}};
    const double noise_vars[] = {1.0, 0.1, 0.01};
    const int per_cell = 600;

    std::uint64_t total = 0;
    std::uint64_t sap_mismatches = 0;
    std::uint64_t symbol_mismatches = 0;
    std::uint64_t stream_id = 0;

    for (const auto& nk : configs) {
        const int n = nk[0], k = nk[1];
        const SubblockParams params(n, k, 4);
        const SapDetector det(params);
        std::vector<cxd> h(n), x(n), y(n), r(n);

        for (double s2 : noise_vars) {
            for (int t = 0; t < per_cell; ++t) {
                TrialRng rng = TrialRng::for_trial(424242, stream_id++);

                const Sap tx = sap_from_rank(rng.next_u64() % params.legal_count(), params);
                std::vector<unsigned> tx_labels(k);
                for (auto& lab : tx_labels) lab = static_cast<unsigned>(rng.next_u64() & 3u);

                std::fill(x.begin(), x.end(), cxd{0.0, 0.0});
                const std::vector<int> active = tx.indices();
                for (int j = 0; j < k; ++j) x[active[j] - 1] = qpsk.point(tx_labels[j]);
                for (int i = 0; i < n; ++i) {
                    do {
                        h[i] = rng.cnormal(1.0);
                    } while (std::abs(h[i]) < 1e-6);
                    y[i] = h[i] * x[i] + rng.cnormal(2.0 * s2);
                    r[i] = y[i] / h[i];
                }

                const ActiveLikelihoods al = compute_metrics(r, h, qpsk);
                const DetectionResult fast = det.ml_detect(al);

                // Brute-force joint minimum distance over every legal SAP and
                // every QPSK label assignment; ties keep the first candidate,
                // i.e. the lowest rank.
                double best = std::numeric_limits<double>::infinity();
                std::uint64_t best_rank = 0, best_combo = 0;
                for (std::uint64_t rank = 0; rank < params.legal_count(); ++rank) {
                    const Sap& sap = det.legal_sap(rank);
                    const std::uint64_t combos = std::uint64_t{1} << (2 * k);
                    for (std::uint64_t combo = 0; combo < combos; ++combo) {
                        double dist = 0.0;
                        int j = 0;
                        for (int i = 0; i < n; ++i) {
                            if ((sap.mask >> i) & 1u) {
                                const unsigned lab = static_cast<unsigned>((combo >> (2 * j)) & 3u);
                                ++j;
                                dist += std::norm(y[i] - h[i] * qpsk.point(lab));
                            } else {
                                dist += std::norm(y[i]);
                            }
                        }
                        if (dist < best) {
                            best = dist;
                            best_rank = rank;
                            best_combo = combo;
                        }
                    }
                }
                std::vector<unsigned> oracle_labels(k);
                for (int j = 0; j < k; ++j)
                    oracle_labels[j] = static_cast<unsigned>((best_combo >> (2 * j)) & 3u);

                ++total;
                if (fast.sap.mask != det.legal_sap(best_rank).mask) ++sap_mismatches;
                else if (fast.symbol_labels != oracle_labels) ++symbol_mismatches;
            }
        }
    }

    c.check(total >= 10000, strf("%llu random instances (need >= 10000)",
                                 static_cast<unsigned long long>(total)));
    c.check(sap_mismatches == 0, strf("SAP agreement: %llu mismatches",
                                      static_cast<unsigned long long>(sap_mismatches)));
    c.check(symbol_mismatches == 0, strf("symbol agreement: %llu mismatches",
                                         static_cast<unsigned long long>(symbol_mismatches)));
    c.note("(n,k) in {4,5,6}x{2,3}, QPSK, Rayleigh H, noise var {1, 0.1, 0.01}");
}

// ---------------------------------------------------------------- criterion 4

void criterion_kbest_oracle(Criterion& c) {
    std::uint64_t vectors = 0;
    std::uint64_t order_mismatches = 0;
    std::uint64_t second_mismatches = 0;

    for (int n = 2; n <= 8; ++n) {
        for (int k = 1; k < n; ++k) {
            const SubblockParams params(n, k, 4);
            for (int t = 0; t < 36; ++t) {
                TrialRng rng = TrialRng::for_trial(777000 + n * 16 + k, t);

                ActiveLikelihoods al;
                std::vector<std::pair<double, std::uint64_t>> oracle;
                bool distinct = false;
                while (!distinct) {
                    al.a.resize(n);
                    for (double& v : al.a) v = rng.gaussian();
                    al.shat.assign(n, 0);
                    al.order.resize(n);
                    std::iota(al.order.begin(), al.order.end(), 0);
                    std::sort(al.order.begin(), al.order.end(), [&](int lhs, int rhs) {
                        if (al.a[lhs] != al.a[rhs]) return al.a[lhs] > al.a[rhs];
                        return lhs < rhs;
                    });

                    oracle.clear();
                    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
                        if (std::popcount(m) != k) continue;
                        double sum = 0.0;
                        for (int i = 0; i < n; ++i)
                            if ((m >> i) & 1u) sum += al.a[i];
                        oracle.emplace_back(sum, m);
                    }
                    std::sort(oracle.begin(), oracle.end(),
                              [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });

                    // The stream's tie rule lives in sorted-position space, so
                    // only accept draws where every subset sum is distinct.
                    distinct = true;
                    for (std::size_t q = 1; q < oracle.size(); ++q)
                        if (oracle[q - 1].first - oracle[q].first < 1e-9) distinct = false;
                }

                const auto items = kth_best_saps(al, params);
                ++vectors;

                bool ok = items.size() == oracle.size();
                if (ok) {
                    for (std::size_t q = 0; q < items.size(); ++q) {
                        if (items[q].sap.mask != oracle[q].second ||
                            std::fabs(items[q].sum - oracle[q].first) > 1e-9) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) ++order_mismatches;

                if (items.size() >= 2) {
                    std::uint64_t expect = 0;
                    for (int j = 0; j + 1 < k; ++j) expect |= std::uint64_t{1} << al.order[j];
                    expect |= std::uint64_t{1} << al.order[k];
                    if (items[1].sap.mask != expect) ++second_mismatches;
                }
            }
        }
    }

    c.check(vectors >= 1000, strf("%llu random metric vectors over n = 2..8, all k (need >= 1000)",
                                  static_cast<unsigned long long>(vectors)));
    c.check(order_mismatches == 0,
            strf("stream order == enumeration sorted by sum: %llu mismatches",
                 static_cast<unsigned long long>(order_mismatches)));
    c.check(second_mismatches == 0,
            strf("element 2 == {i_1..i_(k-1), i_(k+1)} closed form: %llu mismatches",
                 static_cast<unsigned long long>(second_mismatches)));
}

// ---------------------------------------------------------------- criterion 5

void criterion_metric_distribution(Criterion& c) {
    const Constellation qpsk = Constellation::qpsk();
    const cxd H = std::polar(0.8, 0.7);
    const double h2 = std::norm(H);
    const double h4 = h2 * h2;
    const std::uint64_t draws = 1000000;

    // Metrics are normalized to unit symbol energy; sigma is the matching
    // per-dimension noise deviation after equalization.
    const auto sample = [&](bool active_subcarrier, double sigma, std::uint64_t stream,
                            double& mean, double& var) {
        TrialRng rng = TrialRng::for_trial(505, stream);
        std::vector<cxd> rvec(1), hvec(1, H);
        ActiveLikelihoods al;
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t i = 0; i < draws; ++i) {
            const cxd s = active_subcarrier ? qpsk.point(static_cast<unsigned>(rng.next_u64() & 3u))
                                            : cxd{0.0, 0.0};
            rvec[0] = s + rng.cnormal(2.0 * sigma * sigma);
            compute_metrics(rvec, hvec, qpsk, al);
            const double ahat = al.a[0] / qpsk.avg_energy();
            sum += ahat;
            sumsq += ahat * ahat;
        }
        mean = sum / static_cast<double>(draws);
        var = sumsq / static_cast<double>(draws) - mean * mean;
    };

    {
        const double sigma = 0.05;
        const double claim_var = 2.0 * h4 * sigma * sigma;
        double mean = 0.0, var = 0.0;
        sample(true, sigma, 0, mean, var);
        c.check(rel_dev(mean, h2) <= 0.02,
                strf("active mean %.6f vs +|H|^2 = %.6f (dev %.2f%%, tol 2%%)", mean, h2,
                     100.0 * rel_dev(mean, h2)));
        c.check(rel_dev(var, claim_var) <= 0.02,
                strf("active var %.6e vs 2|H|^4 sigma^2 = %.6e (dev %.2f%%, tol 2%%)", var,
                     claim_var, 100.0 * rel_dev(var, claim_var)));
        c.note(strf("active draws: H = 0.8 e^{j0.7}, sigma = %.3g, %llu samples", sigma,
                    static_cast<unsigned long long>(draws)));
    }
    {
        const double sigma = 0.005;
        const double claim_var = 2.0 * h4 * sigma * sigma;
        double mean = 0.0, var = 0.0;
        sample(false, sigma, 1, mean, var);
        c.check(rel_dev(mean, -h2) <= 0.02,
                strf("inactive mean %.6f vs -|H|^2 = %.6f (dev %.2f%%, tol 2%%)", mean, -h2,
                     100.0 * rel_dev(mean, -h2)));
        c.check(rel_dev(var, claim_var) <= 0.02,
                strf("inactive var %.6e vs 2|H|^4 sigma^2 = %.6e (dev %.2f%%, tol 2%%)", var,
                     claim_var, 100.0 * rel_dev(var, claim_var)));
        c.note(strf("inactive draws: sigma = %.3g; measured/claimed var ratio %.4f", sigma,
                    var / claim_var));
        c.note("the claimed variance treats the detected symbol as fixed; with hard");
        c.note("decisions on a noise-only subcarrier the metric uses |Re|+|Im| of the");
        c.note("noise, so its true variance is (1 - 2/pi) = 0.3634 of the claim. This");
        c.note("subcheck is expected to stay red at any sample size.");
    }
}

// ---------------------------------------------------------------- criterion 6

void criterion_fig2_gaps(Criterion& c, const SweepResult& fig2) {
    double worst_klv = 0.0, worst_subml = 0.0;
    bool ok_klv = true, ok_subml = true;
    for (std::size_t i = 0; i < fig2.points.size(); ++i) {
        const OutcomeTally& t = fig2.points[i];
        const double ml = t.ml.ber(), klv = t.klv.ber(), subml = t.subml.ber();
        if (ml <= 0.0) {
            ok_klv = ok_klv && klv == 0.0;
            ok_subml = ok_subml && subml == 0.0;
            continue;
        }
        const double gk = std::fabs(klv - ml) / ml;
        const double gs = std::fabs(subml - ml) / ml;
        worst_klv = std::max(worst_klv, gk);
        worst_subml = std::max(worst_subml, gs);
        ok_klv = ok_klv && gk < 0.15;
        ok_subml = ok_subml && gs < 0.05;
    }
    c.check(ok_klv, strf("|BER_klv - BER_ML| / BER_ML < 15%% at all %zu points (worst %.2f%%)",
                         fig2.points.size(), 100.0 * worst_klv));
    c.check(ok_subml, strf("|BER_subml - BER_ML| / BER_ML < 5%% at all %zu points (worst %.2f%%)",
                           fig2.points.size(), 100.0 * worst_subml));
}

// ---------------------------------------------------------------- criterion 7

void criterion_fig3_shape(Criterion& c, const SweepResult& fig3) {
    const std::size_t npts = fig3.points.size();
    const std::size_t half = npts / 2;

    // (a) visible klv gap: outside the summed 95% half-widths on the
    // mid-to-high band, pinned to 10..30 dB. At the 35 dB end point the klv
    // and ML curves have converged below the Monte Carlo resolution of the
    // pinned trial count, so no gap is resolvable there by construction.
    bool sep_ok = true;
    for (std::size_t i = 2; i + 1 < npts; ++i) {
        const OutcomeTally& t = fig3.points[i];
        const double gap = t.klv.ber() - t.ml.ber();
        const double ci = wilson(t.ml.bit_errors, t.ml.bits).half_width +
                          wilson(t.klv.bit_errors, t.klv.bits).half_width;
        const bool ok = gap > 0.0 && gap > ci;
        sep_ok = sep_ok && ok;
        c.note(strf("  %2.0f dB: klv-ml gap %.3e vs CI sum %.3e (%s)", fig3.snr_db[i], gap, ci,
                    ok ? "outside" : "inside"));
    }
    c.check(sep_ok, "klv gap positive and outside the 95% CIs from 10 to 30 dB");

    // (b) subml within the summed CIs of ML on the top half of the grid.
    bool within_ok = true;
    for (std::size_t i = half; i < npts; ++i) {
        const OutcomeTally& t = fig3.points[i];
        const double gap = std::fabs(t.subml.ber() - t.ml.ber());
        const double ci = wilson(t.ml.bit_errors, t.ml.bits).half_width +
                          wilson(t.subml.bit_errors, t.subml.bits).half_width;
        const bool ok = gap <= ci;
        within_ok = within_ok && ok;
        c.note(strf("  %2.0f dB: |subml-ml| %.3e vs CI sum %.3e (%s)", fig3.snr_db[i], gap, ci,
                    ok ? "within" : "outside"));
    }
    c.check(within_ok, "subml BER within the 95% CI of ML over the top half of the grid");
    if (!within_ok) {
        c.note("the residual subml-ml gap is real: it equals the bit damage of the");
        c.note("rank-0 fallback taken when the two best SAPs are both illegal, which");
        c.note("still has visible probability mass at 20 dB for this parameter set.");
        c.note("More trials shrink the CI but not the gap, so the subcheck cannot be");
        c.note("made to pass at 20 dB without changing the fallback or the grid.");
    }

    // (c) the ML-subml SAP-error gap, in exact subblock counts, must be
    // non-increasing across the top half.
    bool mono_ok = true;
    std::string gaps;
    std::uint64_t prev = 0;
    for (std::size_t i = half; i < npts; ++i) {
        const OutcomeTally& t = fig3.points[i];
        const std::uint64_t gap = t.subml.sap_errors - t.ml.sap_errors;
        if (i > half && gap > prev) mono_ok = false;
        prev = gap;
        gaps += strf("%s%llu", gaps.empty() ? "" : ", ", static_cast<unsigned long long>(gap));
    }
    c.check(mono_ok, strf("SAP-error gap non-increasing over the top half (counts: %s)",
                          gaps.c_str()));
}

// ---------------------------------------------------------------- criterion 8

void criterion_bounds(Criterion& c, const char* name, const SweepResult& result,
                      const SubblockParams& params) {
    const std::vector<BoundReport> reports = check_bounds(result, params);
    bool all_ok = true;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_margin_snr = 0.0;
    std::string min_margin_check;
    for (const BoundReport& rep : reports) {
        all_ok = all_ok && rep.all_pass();
        for (const BoundCheck& chk : rep.checks) {
            if (chk.name.find("gap_bound") == std::string::npos) continue;
            const double margin = chk.rhs + chk.slack - chk.lhs;
            if (margin < min_margin) {
                min_margin = margin;
                min_margin_snr = rep.snr_db;
                min_margin_check = chk.name;
            }
        }
    }
    c.check(all_ok, strf("%s: both gap bounds and both ordering identities hold at all %zu points",
                         name, reports.size()));
    c.note(strf("  %s tightest margin: %s at %g dB, rhs+slack-lhs = %.3e", name,
                min_margin_check.c_str(), min_margin_snr, min_margin));
}

// ---------------------------------------------------------------- criterion 9

void criterion_exactness(Criterion& c, const OutcomeTally& flat) {
    c.check(flat.ml.bit_errors == 0 && flat.klv.bit_errors == 0 && flat.subml.bit_errors == 0,
            "noiseless flat channel: zero bit errors for ml, klv and subml");
    c.check(flat.ml.sap_errors == 0 && flat.klv.sap_errors == 0 && flat.subml.sap_errors == 0 &&
                flat.klv.fallbacks == 0 && flat.subml.fallbacks == 0,
            "noiseless flat channel: zero SAP errors and zero fallbacks");
    c.check(flat.omega_c() == flat.subblocks && flat.omega_l() == 0 && flat.omega_i() == 0 &&
                flat.overflow == 0,
            strf("all %llu subblocks labeled best-legal-correct",
                 static_cast<unsigned long long>(flat.subblocks)));

    bool round_trip = true;
    std::uint64_t ranks_checked = 0;
    for (int n = 2; n <= 12 && round_trip; ++n) {
        for (int k = 1; k < n && round_trip; ++k) {
            const SubblockParams params(n, k, 2);
            std::set<std::uint64_t> masks;
            for (std::uint64_t rank = 0; rank < params.pattern_count(); ++rank) {
                const Sap sap = sap_from_rank(rank, params);
                if (std::popcount(sap.mask) != k || sap.rank != rank ||
                    rank_of_mask(sap.mask, params) != rank || !masks.insert(sap.mask).second) {
                    round_trip = false;
                    break;
                }
                ++ranks_checked;
            }
            if (masks.size() != params.pattern_count()) round_trip = false;
        }
    }
    c.check(round_trip, strf("combinadic rank/unrank bijective for n <= 12, all k (%llu ranks)",
                             static_cast<unsigned long long>(ranks_checked)));
}

void criterion_determinism(Criterion& c, std::vector<SweepResult>& extra_sweeps) {
    MonteCarloConfig cfg(FrameConfig(32, SubblockParams(8, 4, 4)), Constellation::qpsk());
    cfg.snr_grid_db = {0.0, 10.0, 20.0};
    cfg.trials_per_point = 400;
    cfg.master_seed = 9;

    const auto run_csv = [&](int workers, SweepResult& out) {
        cfg.workers = workers;
        out = sweep(cfg);
        std::ostringstream os;
        write_result_csv(os, out);
        return os.str();
    };

    SweepResult w1, w3, w1b;
    const std::string csv1 = run_csv(1, w1);
    const std::string csv3 = run_csv(3, w3);
    const std::string csv1b = run_csv(1, w1b);
    c.check(csv1 == csv3, "result CSV byte-identical with 1 worker vs 3 workers");
    c.check(csv1 == csv1b, "result CSV byte-identical across repeated seeded runs");
    extra_sweeps.push_back(std::move(w1));
    extra_sweeps.push_back(std::move(w3));
    extra_sweeps.push_back(std::move(w1b));
}

}  // namespace

int main() {
    std::fprintf(stderr, "acceptance: fig2 sweep (8 points x 100000 trials)\n");
    const auto progress = [](int index, double snr_db) {
        std::fprintf(stderr, "  point %d: snr=%g dB\n", index + 1, snr_db);
    };
    const MonteCarloConfig fig2_cfg = RunConfig::preset("fig2").to_monte_carlo();
    const SweepResult fig2 = sweep(fig2_cfg, progress);

    std::fprintf(stderr, "acceptance: fig3 sweep (8 points x 100000 trials)\n");
    const MonteCarloConfig fig3_cfg = RunConfig::preset("fig3").to_monte_carlo();
    const SweepResult fig3 = sweep(fig3_cfg, progress);

    std::fprintf(stderr, "acceptance: noiseless flat run\n");
    MonteCarloConfig flat_cfg(FrameConfig(128, SubblockParams(8, 4, 4)), Constellation::qpsk());
    flat_cfg.snr_grid_db = {0.0};
    flat_cfg.trials_per_point = 2000;
    flat_cfg.master_seed = 3;
    flat_cfg.pdp = PowerDelayProfile::single_tap();
    flat_cfg.sigma2_override = 0.0;
    const OutcomeTally flat = estimate(flat_cfg, 0.0);

    std::fprintf(stderr, "acceptance: oracle and distribution checks\n");

    std::vector<Criterion> criteria;
    criteria.reserve(9);  // references returned by add() must stay valid
    const auto add = [&](int id, const char* title) -> Criterion& {
        criteria.push_back(Criterion{id, title, true, {}});
        return criteria.back();
    };

    criterion_ratios(add(1, "illegal-SAP ratios, exact and as printed"));
    criterion_joint_oracle(add(2, "ML detector == brute-force joint minimizer"));
    Criterion& dom = add(3, "correctness dominance chain klv => subml => ml");
    criterion_kbest_oracle(add(4, "k-best SAP stream == full enumeration"));
    criterion_metric_distribution(add(5, "per-subcarrier metric distribution"));
    criterion_fig2_gaps(add(6, "fig2 preset: detector BER gaps small at every point"), fig2);
    criterion_fig3_shape(add(7, "fig3 preset: visible klv gap, subml tracks ML"), fig3);
    Criterion& bounds = add(8, "probability-gap bounds at 95% on both presets");
    criterion_bounds(bounds, "fig2", fig2, fig2_cfg.frame.subblock());
    criterion_bounds(bounds, "fig3", fig3, fig3_cfg.frame.subblock());
    Criterion& exact = add(9, "noiseless exactness, combinadic round trip, determinism");
    criterion_exactness(exact, flat);
    std::vector<SweepResult> extra_sweeps;
    criterion_determinism(exact, extra_sweeps);

    // Criterion 3 covers every subblock simulated by this process: both
    // preset sweeps, the noiseless run and the determinism runs.
    {
        std::uint64_t violations = 0, subblocks = 0;
        const auto absorb = [&](const SweepResult& result) {
            for (const OutcomeTally& t : result.points) {
                violations += t.dominance_violations;
                subblocks += t.subblocks;
            }
        };
        absorb(fig2);
        absorb(fig3);
        for (const SweepResult& s : extra_sweeps) absorb(s);
        violations += flat.dominance_violations;
        subblocks += flat.subblocks;
        dom.check(violations == 0,
                  strf("0 violations over %llu simulated subblocks (klv correct implies subml "
                       "correct implies ml correct)",
                       static_cast<unsigned long long>(subblocks)));
    }

    std::sort(criteria.begin(), criteria.end(),
              [](const Criterion& a, const Criterion& b) { return a.id < b.id; });

    std::printf("OFDM-IM acceptance suite\n");
    std::printf("========================\n");
    int failed = 0;
    for (const Criterion& c : criteria) {
        if (!c.pass) ++failed;
        std::printf("[%s] criterion %d: %s\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const std::string& line : c.lines) std::printf("    %s\n", line.c_str());
    }
    std::printf("\n%d of 9 criteria passed", 9 - failed);
    if (failed > 0)
        std::printf(", %d failed (FAIL lines above carry the measured evidence)", failed);
    std::printf("\n");
    return failed;
}
