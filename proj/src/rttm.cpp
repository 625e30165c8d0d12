#include "diarasr/rttm.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

namespace diarasr {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

double parse_time_field(std::string_view field, std::size_t line_no,
                        std::size_t field_no, const char *name) {
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("rttm line " + std::to_string(line_no) + ": field " +
                             std::to_string(field_no) + " (" + name +
                             "): not a number: '" + std::string(field) + "'",
                         line_no);
    }
    return value;
}

} // namespace

SegmentList parse_rttm(std::string_view text) {
    SegmentList out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }

        auto fields = split_fields(line);
        if (fields.empty() || fields[0].front() == ';') {
            continue;
        }
        if (fields[0] != "SPEAKER") {
            throw ParseError("rttm line " + std::to_string(line_no) +
                                 ": field 1: expected 'SPEAKER', got '" +
                                 std::string(fields[0]) + "'",
                             line_no);
        }
        if (fields.size() < 9) {
            throw ParseError("rttm line " + std::to_string(line_no) +
                                 ": expected at least 9 fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        double onset = parse_time_field(fields[3], line_no, 4, "onset");
        double dur = parse_time_field(fields[4], line_no, 5, "duration");
        if (onset < 0.0) {
            throw ParseError("rttm line " + std::to_string(line_no) +
                                 ": field 4 (onset): negative",
                             line_no);
        }
        if (!(dur > 0.0)) {
            throw ParseError("rttm line " + std::to_string(line_no) +
                                 ": field 5 (duration): must be positive",
                             line_no);
        }
        Segment seg;
        seg.session_id = std::string(fields[1]);
        seg.speaker = std::string(fields[7]);
        seg.start = onset;
        seg.end = onset + dur;
        out.push_back(std::move(seg));
    }
    return out;
}

std::string serialize_rttm(const SegmentList &segs) {
    std::string out;
    char buf[64];
    for (const auto &seg : segs) {
        out += "SPEAKER ";
        out += seg.session_id;
        out += " 1 ";
        std::snprintf(buf, sizeof buf, "%.3f %.3f", seg.start, seg.duration());
        out += buf;
        out += " <NA> <NA> ";
        out += seg.speaker;
        out += " <NA> <NA>\n";
    }
    return out;
}

} // namespace diarasr
