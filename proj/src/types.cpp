#include "diarasr/types.hpp"

namespace diarasr {

void validate_segment(const Segment &seg) {
    if (seg.start < 0.0) {
        throw std::invalid_argument("segment " + seg.session_id + "/" +
                                    seg.speaker + ": negative start time");
    }
    if (!(seg.end > seg.start)) {
        throw std::invalid_argument("segment " + seg.session_id + "/" +
                                    seg.speaker +
                                    ": end must be greater than start");
    }
}

std::map<std::string, SegmentList> group_by_session(const SegmentList &segs) {
    std::map<std::string, SegmentList> out;
    for (const auto &seg : segs) {
        out[seg.session_id].push_back(seg);
    }
    return out;
}

std::map<std::string, SegmentList> group_by_speaker(const SegmentList &segs) {
    std::map<std::string, SegmentList> out;
    for (const auto &seg : segs) {
        out[seg.speaker].push_back(seg);
    }
    return out;
}

std::string require_single_session(const SegmentList &segs,
                                   const std::string &what) {
    if (segs.empty()) {
        return "";
    }
    const std::string &sid = segs.front().session_id;
    for (const auto &seg : segs) {
        if (seg.session_id != sid) {
            throw std::invalid_argument(what + ": expected a single session, got '" +
                                        sid + "' and '" + seg.session_id + "'");
        }
    }
    return sid;
}

} // namespace diarasr
