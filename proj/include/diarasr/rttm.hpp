#pragma once

#include <string>
#include <string_view>

#include "diarasr/types.hpp"

namespace diarasr {

// Parses RTTM SPEAKER lines (>= 9 whitespace-separated fields):
//
//   SPEAKER <session> <chan> <onset> <duration> <NA> <NA> <speaker> <NA> [<NA>]
//
// Lines starting with ';' are comments, blank lines are skipped. The channel
// field is parsed but ignored. Malformed lines raise ParseError naming the
// line and field; durations must be strictly positive.
SegmentList parse_rttm(std::string_view text);

// Writes one SPEAKER line per segment with onset/duration at 3 decimals
// (10 ms precision). Round-trips exactly for times with <= 3 decimals.
std::string serialize_rttm(const SegmentList &segs);

} // namespace diarasr
