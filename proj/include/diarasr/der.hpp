#pragma once

#include <optional>
#include <vector>

#include "diarasr/types.hpp"

namespace diarasr {

struct DerReport {
    double missed = 0.0;           // seconds
    double false_alarm = 0.0;      // seconds
    double confusion = 0.0;        // seconds
    double total_ref_speech = 0.0; // seconds, counts each active speaker
    // (missed + false_alarm + confusion) / total_ref_speech; empty when
    // total_ref_speech == 0.
    std::optional<double> der;
};

// Diarization error rate with collar semantics:
//  - scored time = (uem, or the [min start, max end] extent of ref+hyp)
//    minus the union of +/-collar neighborhoods around every reference
//    segment boundary;
//  - hypothesis speakers are mapped one-to-one to reference speakers by
//    the assignment maximizing total overlap duration, computed on the
//    uem-restricted but *uncollared* timeline (md-eval convention);
//  - a boundary-event sweep accumulates per-instant
//    missed = max(0, #ref - #hyp), false_alarm = max(0, #hyp - #ref) and
//    confusion = min(#ref, #hyp) - #correctly-matched, where counts are
//    distinct active speakers.
// Overlapped reference speech is scored: total_ref_speech integrates the
// number of active reference speakers. Words on segments are ignored.
DerReport der(const SegmentList &ref, const SegmentList &hyp, double collar,
              const std::optional<std::vector<Interval>> &uem = std::nullopt);

} // namespace diarasr
