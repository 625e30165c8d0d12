#pragma once

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's algorithmic code paths: exhaustive
// recursion instead of DP tables, permutation enumeration instead of the
// assignment solver, grid sampling instead of the interval sweep, scalar
// loops instead of the matrix helpers.

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "diarasr/der.hpp"
#include "diarasr/edit_distance.hpp"
#include "diarasr/fusion.hpp"
#include "diarasr/types.hpp"
#include "diarasr/wer.hpp"

namespace oracles {

struct EdCell {
    long long total = 0;
    long long subs = 0;

    bool operator<(const EdCell &o) const {
        return total < o.total || (total == o.total && subs < o.subs);
    }
};

inline diarasr::ErrorCounts counts_from(EdCell cell, long long ref_len,
                                        long long hyp_len) {
    diarasr::ErrorCounts c;
    c.substitutions = cell.subs;
    long long di = cell.total - cell.subs;
    long long diff = ref_len - hyp_len;
    c.deletions = (di + diff) / 2;
    c.insertions = (di - diff) / 2;
    c.ref_tokens = ref_len;
    return c;
}

// Plain exhaustive recursion over the three edit moves.
inline EdCell lev_recursive(const std::vector<std::string> &ref,
                            const std::vector<std::string> &hyp,
                            std::size_t i, std::size_t j) {
    if (i == ref.size() && j == hyp.size()) {
        return {0, 0};
    }
    EdCell best{LLONG_MAX / 4, 0};
    if (i < ref.size() && j < hyp.size()) {
        EdCell cand = lev_recursive(ref, hyp, i + 1, j + 1);
        if (ref[i] != hyp[j]) {
            cand.total += 1;
            cand.subs += 1;
        }
        if (cand < best) {
            best = cand;
        }
    }
    if (i < ref.size()) {
        EdCell cand = lev_recursive(ref, hyp, i + 1, j);
        cand.total += 1;
        if (cand < best) {
            best = cand;
        }
    }
    if (j < hyp.size()) {
        EdCell cand = lev_recursive(ref, hyp, i, j + 1);
        cand.total += 1;
        if (cand < best) {
            best = cand;
        }
    }
    return best;
}

inline diarasr::ErrorCounts
edit_distance_oracle(const std::vector<std::string> &ref,
                     const std::vector<std::string> &hyp) {
    return counts_from(lev_recursive(ref, hyp, 0, 0),
                       static_cast<long long>(ref.size()),
                       static_cast<long long>(hyp.size()));
}

// Exhaustive recursion with the temporal pairing constraint. Memoized so
// acceptance-scale streams stay fast; the recursion itself, not a DP table
// fill, defines the result.
inline EdCell tc_recursive(const std::vector<diarasr::TimedWord> &ref,
                           const std::vector<diarasr::TimedWord> &hyp,
                           double collar, std::size_t i, std::size_t j,
                           std::vector<std::vector<EdCell>> &memo,
                           std::vector<std::vector<char>> &seen) {
    if (i == ref.size() && j == hyp.size()) {
        return {0, 0};
    }
    if (seen[i][j]) {
        return memo[i][j];
    }
    EdCell best{LLONG_MAX / 4, 0};
    if (i < ref.size() && j < hyp.size()) {
        bool allowed = hyp[j].begin - collar <= ref[i].end &&
                       ref[i].begin <= hyp[j].end + collar;
        if (allowed) {
            EdCell cand = tc_recursive(ref, hyp, collar, i + 1, j + 1, memo,
                                       seen);
            if (ref[i].token != hyp[j].token) {
                cand.total += 1;
                cand.subs += 1;
            }
            if (cand < best) {
                best = cand;
            }
        }
    }
    if (i < ref.size()) {
        EdCell cand = tc_recursive(ref, hyp, collar, i + 1, j, memo, seen);
        cand.total += 1;
        if (cand < best) {
            best = cand;
        }
    }
    if (j < hyp.size()) {
        EdCell cand = tc_recursive(ref, hyp, collar, i, j + 1, memo, seen);
        cand.total += 1;
        if (cand < best) {
            best = cand;
        }
    }
    seen[i][j] = 1;
    memo[i][j] = best;
    return best;
}

inline diarasr::ErrorCounts
tc_edit_distance_oracle(const std::vector<diarasr::TimedWord> &ref,
                        const std::vector<diarasr::TimedWord> &hyp,
                        double collar) {
    std::vector<std::vector<EdCell>> memo(ref.size() + 1,
                                          std::vector<EdCell>(hyp.size() + 1));
    std::vector<std::vector<char>> seen(ref.size() + 1,
                                        std::vector<char>(hyp.size() + 1, 0));
    return counts_from(tc_recursive(ref, hyp, collar, 0, 0, memo, seen),
                       static_cast<long long>(ref.size()),
                       static_cast<long long>(hyp.size()));
}

// Exhaustive enumeration of every row -> column permutation in
// lexicographic order; the first strict improvement wins, so ties resolve
// to the lexicographically smallest optimal assignment.
template <typename Cost>
struct BruteForceAssignment {
    Cost total;
    std::vector<int> row_to_col;
};

template <typename Cost>
inline BruteForceAssignment<Cost>
brute_force_assignment(const std::vector<std::vector<Cost>> &cost) {
    const std::size_t n = cost.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BruteForceAssignment<Cost> best;
    bool first = true;
    std::vector<int> p = perm;
    do {
        Cost total{};
        for (std::size_t r = 0; r < n; ++r) {
            total += cost[r][p[r]];
        }
        if (first || total < best.total) {
            best.total = total;
            best.row_to_col = p;
            first = false;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// Full cpwer/tcpwer by permutation enumeration. Pair costs come from the
// supplied matrix (hyp-major), so the enumeration checks the assignment
// layer, not the alignment layer.
struct PermutationScore {
    long long total_errors = 0;
    long long ref_tokens = 0;
    std::vector<int> hyp_to_ref;
};

inline PermutationScore brute_force_permutation_score(
    const std::vector<std::vector<diarasr::ErrorCounts>> &pair) {
    const std::size_t n = pair.size();
    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n));
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t r = 0; r < n; ++r) {
            cost[h][r] = pair[h][r].total_errors();
        }
    }
    auto best = brute_force_assignment(cost);
    PermutationScore out;
    out.total_errors = best.total;
    out.hyp_to_ref = best.row_to_col;
    diarasr::ErrorCounts sum;
    for (std::size_t h = 0; h < n; ++h) {
        sum += pair[h][best.row_to_col[h]];
    }
    out.ref_tokens = sum.ref_tokens;
    return out;
}

// --- 1 ms grid oracles -----------------------------------------------------

// Cell c covers [c, c+1) ms; its midpoint lies in a segment exactly when
// the 1 ms-quantized segment covers the cell. One bitmap per speaker.
struct GridActivity {
    long long first = 0; // cell index of the grid origin
    std::vector<std::string> names;
    std::vector<std::vector<char>> cells; // per speaker

    bool active(std::size_t speaker, long long cell) const {
        auto idx = static_cast<std::size_t>(cell - first);
        return idx < cells[speaker].size() && cells[speaker][idx];
    }
};

inline GridActivity grid_activity(const diarasr::SegmentList &segs,
                                  long long first, long long last) {
    GridActivity grid;
    grid.first = first;
    const auto size = static_cast<std::size_t>(std::max(0LL, last - first));
    for (const auto &[name, spk_segs] : diarasr::group_by_speaker(segs)) {
        std::vector<char> cells(size, 0);
        for (const auto &seg : spk_segs) {
            long long b = std::max(first, std::llround(seg.start * 1000.0));
            long long e = std::min(last, std::llround(seg.end * 1000.0));
            for (long long c = b; c < e; ++c) {
                cells[static_cast<std::size_t>(c - first)] = 1;
            }
        }
        grid.names.push_back(name);
        grid.cells.push_back(std::move(cells));
    }
    return grid;
}

// DER by counting 1 ms cells. Exact for 1 ms-quantized inputs.
inline diarasr::DerReport grid_der(const diarasr::SegmentList &ref,
                                   const diarasr::SegmentList &hyp,
                                   double collar) {
    diarasr::DerReport report;
    if (ref.empty() && hyp.empty()) {
        return report;
    }
    double lo = 1e18, hi = -1e18;
    for (const auto *segs : {&ref, &hyp}) {
        for (const auto &seg : *segs) {
            lo = std::min(lo, seg.start);
            hi = std::max(hi, seg.end);
        }
    }
    const long long first = std::llround(lo * 1000.0);
    const long long last = std::llround(hi * 1000.0);
    GridActivity rg = grid_activity(ref, first, last);
    GridActivity hg = grid_activity(hyp, first, last);

    // Collar-excluded cells.
    std::vector<char> excluded(static_cast<std::size_t>(last - first), 0);
    if (collar > 0.0) {
        for (const auto &seg : ref) {
            for (double boundary : {seg.start, seg.end}) {
                long long b = std::max(
                    first, std::llround((boundary - collar) * 1000.0));
                long long e = std::min(
                    last, std::llround((boundary + collar) * 1000.0));
                for (long long c = b; c < e; ++c) {
                    excluded[static_cast<std::size_t>(c - first)] = 1;
                }
            }
        }
    }

    // Mapping from uncollared co-activity cell counts.
    const std::size_t nr = rg.names.size();
    const std::size_t nh = hg.names.size();
    const std::size_t n = std::max(nr, nh);
    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n, 0));
    for (long long cell = first; cell < last; ++cell) {
        for (std::size_t r = 0; r < nr; ++r) {
            if (!rg.active(r, cell)) {
                continue;
            }
            for (std::size_t h = 0; h < nh; ++h) {
                if (hg.active(h, cell)) {
                    --cost[r][h]; // negated overlap, to minimize
                }
            }
        }
    }
    auto mapping = n > 0 ? brute_force_assignment(cost).row_to_col
                         : std::vector<int>{};

    long long missed = 0, fa = 0, confusion = 0, ref_time = 0;
    for (long long cell = first; cell < last; ++cell) {
        if (excluded[static_cast<std::size_t>(cell - first)]) {
            continue;
        }
        int n_ref = 0, n_hyp = 0, n_correct = 0;
        for (std::size_t h = 0; h < nh; ++h) {
            n_hyp += hg.active(h, cell);
        }
        for (std::size_t r = 0; r < nr; ++r) {
            if (!rg.active(r, cell)) {
                continue;
            }
            ++n_ref;
            auto h = static_cast<std::size_t>(mapping[r]);
            if (h < nh && hg.active(h, cell)) {
                ++n_correct;
            }
        }
        missed += std::max(0, n_ref - n_hyp);
        fa += std::max(0, n_hyp - n_ref);
        confusion += std::min(n_ref, n_hyp) - n_correct;
        ref_time += n_ref;
    }
    report.missed = static_cast<double>(missed) / 1000.0;
    report.false_alarm = static_cast<double>(fa) / 1000.0;
    report.confusion = static_cast<double>(confusion) / 1000.0;
    report.total_ref_speech = static_cast<double>(ref_time) / 1000.0;
    if (report.total_ref_speech > 0.0) {
        report.der = (report.missed + report.false_alarm + report.confusion) /
                     report.total_ref_speech;
    }
    return report;
}

inline double grid_overlap_ratio(const diarasr::SegmentList &segs) {
    if (segs.empty()) {
        return 0.0;
    }
    double lo = 1e18, hi = -1e18;
    for (const auto &seg : segs) {
        lo = std::min(lo, seg.start);
        hi = std::max(hi, seg.end);
    }
    const long long first = std::llround(lo * 1000.0);
    const long long last = std::llround(hi * 1000.0);
    GridActivity grid = grid_activity(segs, first, last);
    long long speech = 0, overlapped = 0;
    for (long long cell = first; cell < last; ++cell) {
        int active = 0;
        for (std::size_t s = 0; s < grid.names.size(); ++s) {
            active += grid.active(s, cell);
        }
        speech += active >= 1;
        overlapped += active >= 2;
    }
    return speech > 0
               ? static_cast<double>(overlapped) / static_cast<double>(speech)
               : 0.0;
}

// --- scalar attention oracle ------------------------------------------------

// Independent triple-loop evaluation of the fusion forward pass.
inline diarasr::fusion::FeatureMatrix
scalar_fuse(const diarasr::fusion::FeatureMatrix &hs,
            const diarasr::fusion::FeatureMatrix &hp,
            const diarasr::fusion::FusionParams &p) {
    using diarasr::fusion::FeatureMatrix;
    const std::size_t t = hs.rows;
    const std::size_t ds = hs.cols;
    const std::size_t dp = hp.cols;
    const std::size_t da = p.w_q.cols;

    auto mat = [](std::size_t r, std::size_t c) { return FeatureMatrix(r, c); };
    FeatureMatrix q = mat(t, da), k = mat(t, da), v = mat(t, ds);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t a = 0; a < da; ++a) {
            for (std::size_t x = 0; x < ds; ++x) {
                q.at(i, a) += hs.at(i, x) * p.w_q.at(x, a);
            }
            for (std::size_t x = 0; x < dp; ++x) {
                k.at(i, a) += hp.at(i, x) * p.w_k.at(x, a);
            }
        }
        for (std::size_t c = 0; c < ds; ++c) {
            for (std::size_t x = 0; x < dp; ++x) {
                v.at(i, c) += hp.at(i, x) * p.w_v.at(x, c);
            }
        }
    }
    FeatureMatrix attn = mat(t, t);
    for (std::size_t i = 0; i < t; ++i) {
        double mx = -1e300;
        for (std::size_t j = 0; j < t; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < da; ++a) {
                s += q.at(i, a) * k.at(j, a);
            }
            attn.at(i, j) = s / std::sqrt(static_cast<double>(da));
            mx = std::max(mx, attn.at(i, j));
        }
        double denom = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            attn.at(i, j) = std::exp(attn.at(i, j) - mx);
            denom += attn.at(i, j);
        }
        for (std::size_t j = 0; j < t; ++j) {
            attn.at(i, j) /= denom;
        }
    }
    FeatureMatrix hca = mat(t, ds);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t c = 0; c < ds; ++c) {
            for (std::size_t j = 0; j < t; ++j) {
                hca.at(i, c) += attn.at(i, j) * v.at(j, c);
            }
        }
    }
    FeatureMatrix out = mat(t, ds);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t c = 0; c < ds; ++c) {
            double z = p.b_g[c];
            for (std::size_t x = 0; x < ds; ++x) {
                z += hca.at(i, x) * p.w_g.at(x, c);
            }
            double gate = 1.0 / (1.0 + std::exp(-z));
            out.at(i, c) = gate * hca.at(i, c) + hs.at(i, c);
        }
    }
    return out;
}

// Same loops, stopping after the attention output.
inline diarasr::fusion::FeatureMatrix
scalar_cross_attention(const diarasr::fusion::FeatureMatrix &hs,
                       const diarasr::fusion::FeatureMatrix &hp,
                       const diarasr::fusion::FusionParams &p) {
    diarasr::fusion::FusionParams open_gate = p;
    // Force gate -> 1 and remove the residual by subtracting hs afterwards:
    // out = 1 * hca + hs.
    open_gate.b_g.assign(hs.cols, 1e9);
    auto out = scalar_fuse(hs, hp, open_gate);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] -= hs.values[i];
    }
    return out;
}

} // namespace oracles
