#pragma once

#include <string>
#include <string_view>

#include "diarasr/types.hpp"

namespace diarasr {

// Parses a segment-list document: a JSON array of flat records
//
//   {"session_id": "S", "speaker": "A", "start_time": 0.0,
//    "end_time": 1.5, "words": "hello world"}
//
// All five keys are required; words may be the empty string. Unknown keys
// are ignored so fixtures from other scoring tools load unchanged. Missing
// keys and non-numeric times raise ParseError naming the record index.
SegmentList parse_seglst(std::string_view text);

// One record per line, full double precision; parse(serialize(x)) == x.
// Segments without words serialize words as "".
std::string serialize_seglst(const SegmentList &segs);

} // namespace diarasr
