#include "diarasr/der.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "diarasr/assignment.hpp"
#include "diarasr/intervals.hpp"

namespace diarasr {

namespace {

struct SpeakerActivity {
    std::vector<std::string> names;              // sorted
    std::vector<std::vector<Interval>> merged;   // per-speaker union
};

SpeakerActivity speaker_activity(const SegmentList &segs) {
    SpeakerActivity out;
    for (auto &[name, spk_segs] : group_by_speaker(segs)) {
        std::vector<Interval> ivs;
        ivs.reserve(spk_segs.size());
        for (const auto &seg : spk_segs) {
            validate_segment(seg);
            ivs.push_back({seg.start, seg.end});
        }
        out.names.push_back(name);
        out.merged.push_back(merge_intervals(std::move(ivs)));
    }
    return out;
}

// Walks merged interval lists left to right; the query points are
// non-decreasing, so each cursor only moves forward.
struct ActivityCursor {
    const std::vector<Interval> *ivs;
    std::size_t pos = 0;

    bool active_at(double t) {
        while (pos < ivs->size() && (*ivs)[pos].end <= t) {
            ++pos;
        }
        return pos < ivs->size() && (*ivs)[pos].begin <= t;
    }
};

} // namespace

DerReport der(const SegmentList &ref, const SegmentList &hyp, double collar,
              const std::optional<std::vector<Interval>> &uem) {
    if (!(collar >= 0.0)) {
        throw std::invalid_argument("der: collar must be non-negative");
    }
    std::string ref_sid = require_single_session(ref, "reference");
    std::string hyp_sid = require_single_session(hyp, "hypothesis");
    if (!ref.empty() && !hyp.empty() && ref_sid != hyp_sid) {
        throw std::invalid_argument("der: reference session '" + ref_sid +
                                    "' does not match hypothesis session '" +
                                    hyp_sid + "'");
    }

    DerReport report;

    SpeakerActivity rs = speaker_activity(ref);
    SpeakerActivity hs = speaker_activity(hyp);

    std::vector<Interval> base;
    if (uem) {
        base = merge_intervals(*uem);
    } else if (!ref.empty() || !hyp.empty()) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto *segs : {&ref, &hyp}) {
            for (const auto &seg : *segs) {
                lo = std::min(lo, seg.start);
                hi = std::max(hi, seg.end);
            }
        }
        base.push_back({lo, hi});
    }
    if (base.empty()) {
        return report; // nothing scoreable; der stays undefined
    }

    // Speaker mapping maximizes total overlap on the uem-restricted but
    // uncollared timeline; collars only exclude time from scoring.
    const std::size_t nr = rs.names.size();
    const std::size_t nh = hs.names.size();
    std::vector<int> ref_to_hyp(nr, -1);
    if (nr > 0 && nh > 0) {
        std::vector<std::vector<Interval>> ref_base(nr), hyp_base(nh);
        for (std::size_t r = 0; r < nr; ++r) {
            ref_base[r] = intersect_intervals(rs.merged[r], base);
        }
        for (std::size_t h = 0; h < nh; ++h) {
            hyp_base[h] = intersect_intervals(hs.merged[h], base);
        }
        const std::size_t n = std::max(nr, nh);
        std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
        for (std::size_t r = 0; r < nr; ++r) {
            for (std::size_t h = 0; h < nh; ++h) {
                cost[r][h] = -total_length(
                    intersect_intervals(ref_base[r], hyp_base[h]));
            }
        }
        std::vector<int> assign = min_cost_assignment(cost);
        for (std::size_t r = 0; r < nr; ++r) {
            if (static_cast<std::size_t>(assign[r]) < nh) {
                ref_to_hyp[r] = assign[r];
            }
        }
    }

    // Scored time: base minus the +/-collar neighborhood of every
    // reference segment boundary.
    std::vector<Interval> zones;
    if (collar > 0.0) {
        zones.reserve(2 * ref.size());
        for (const auto &seg : ref) {
            zones.push_back({seg.start - collar, seg.start + collar});
            zones.push_back({seg.end - collar, seg.end + collar});
        }
    }
    std::vector<Interval> scored = subtract_intervals(base, zones);

    std::vector<std::vector<Interval>> ref_sc(nr), hyp_sc(nh);
    std::vector<double> points;
    for (std::size_t r = 0; r < nr; ++r) {
        ref_sc[r] = intersect_intervals(rs.merged[r], scored);
        for (const auto &iv : ref_sc[r]) {
            points.push_back(iv.begin);
            points.push_back(iv.end);
        }
    }
    for (std::size_t h = 0; h < nh; ++h) {
        hyp_sc[h] = intersect_intervals(hs.merged[h], scored);
        for (const auto &iv : hyp_sc[h]) {
            points.push_back(iv.begin);
            points.push_back(iv.end);
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<ActivityCursor> ref_cur(nr), hyp_cur(nh);
    for (std::size_t r = 0; r < nr; ++r) {
        ref_cur[r].ivs = &ref_sc[r];
    }
    for (std::size_t h = 0; h < nh; ++h) {
        hyp_cur[h].ivs = &hyp_sc[h];
    }

    std::vector<char> ref_active(nr), hyp_active(nh);
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const double a = points[k];
        const double b = points[k + 1];
        if (!(b > a)) {
            continue;
        }
        const double mid = a + (b - a) / 2.0;
        int n_ref = 0, n_hyp = 0, n_correct = 0;
        for (std::size_t r = 0; r < nr; ++r) {
            ref_active[r] = ref_cur[r].active_at(mid);
            n_ref += ref_active[r];
        }
        for (std::size_t h = 0; h < nh; ++h) {
            hyp_active[h] = hyp_cur[h].active_at(mid);
            n_hyp += hyp_active[h];
        }
        for (std::size_t r = 0; r < nr; ++r) {
            if (ref_active[r] && ref_to_hyp[r] >= 0 &&
                hyp_active[ref_to_hyp[r]]) {
                ++n_correct;
            }
        }
        const double dur = b - a;
        report.total_ref_speech += n_ref * dur;
        report.missed += std::max(0, n_ref - n_hyp) * dur;
        report.false_alarm += std::max(0, n_hyp - n_ref) * dur;
        report.confusion += (std::min(n_ref, n_hyp) - n_correct) * dur;
    }

    if (report.total_ref_speech > 0.0) {
        report.der = (report.missed + report.false_alarm + report.confusion) /
                     report.total_ref_speech;
    }
    return report;
}

} // namespace diarasr
