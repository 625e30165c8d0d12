#include "diarasr/uem.hpp"

#include <charconv>

namespace diarasr {

std::map<std::string, std::vector<Interval>> parse_uem(std::string_view text) {
    std::map<std::string, std::vector<Interval>> out;
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

        std::vector<std::string_view> fields;
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
                fields.push_back(line.substr(i, j - i));
            }
            i = j;
        }
        if (fields.empty() || fields[0].front() == ';' ||
            fields[0].front() == '#') {
            continue;
        }
        if (fields.size() < 4) {
            throw ParseError("uem line " + std::to_string(line_no) +
                                 ": expected 4 fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        auto parse_num = [&](std::string_view f, const char *name) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size()) {
                throw ParseError("uem line " + std::to_string(line_no) + ": " +
                                     name + ": not a number",
                                 line_no);
            }
            return v;
        };
        double begin = parse_num(fields[2], "begin");
        double end = parse_num(fields[3], "end");
        if (!(end > begin)) {
            throw ParseError("uem line " + std::to_string(line_no) +
                                 ": end must be greater than begin",
                             line_no);
        }
        out[std::string(fields[0])].push_back({begin, end});
    }
    return out;
}

} // namespace diarasr
