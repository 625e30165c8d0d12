#include "diarasr/seglst.hpp"

#include "diarasr/json_io.hpp"

namespace diarasr {

SegmentList parse_seglst(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("seglst: invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_array()) {
        throw ParseError("seglst: expected a JSON array of records", 0);
    }
    SegmentList out;
    out.reserve(doc.size());
    std::size_t idx = 0;
    for (const auto &rec : doc) {
        out.push_back(segment_from_json(rec, idx));
        ++idx;
    }
    return out;
}

std::string serialize_seglst(const SegmentList &segs) {
    if (segs.empty()) {
        return "[]\n";
    }
    std::string out = "[\n";
    for (std::size_t i = 0; i < segs.size(); ++i) {
        out += "  ";
        out += to_json(segs[i]).dump();
        out += i + 1 < segs.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

} // namespace diarasr
