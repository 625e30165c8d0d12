#include "diarasr/intervals.hpp"

#include <algorithm>

namespace diarasr {

std::vector<Interval> merge_intervals(std::vector<Interval> xs) {
    std::erase_if(xs, [](const Interval &iv) { return !(iv.end > iv.begin); });
    std::sort(xs.begin(), xs.end(), [](const Interval &a, const Interval &b) {
        return a.begin < b.begin || (a.begin == b.begin && a.end < b.end);
    });
    std::vector<Interval> out;
    for (const auto &iv : xs) {
        if (!out.empty() && iv.begin <= out.back().end) {
            out.back().end = std::max(out.back().end, iv.end);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

std::vector<Interval> intersect_intervals(const std::vector<Interval> &a,
                                          const std::vector<Interval> &b) {
    auto ma = merge_intervals(a);
    auto mb = merge_intervals(b);
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < ma.size() && j < mb.size()) {
        double lo = std::max(ma[i].begin, mb[j].begin);
        double hi = std::min(ma[i].end, mb[j].end);
        if (hi > lo) {
            out.push_back({lo, hi});
        }
        if (ma[i].end < mb[j].end) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

std::vector<Interval> subtract_intervals(const std::vector<Interval> &a,
                                         const std::vector<Interval> &b) {
    auto ma = merge_intervals(a);
    auto mb = merge_intervals(b);
    std::vector<Interval> out;
    std::size_t j = 0;
    for (const auto &iv : ma) {
        double cursor = iv.begin;
        while (j < mb.size() && mb[j].end <= cursor) {
            ++j;
        }
        std::size_t k = j;
        while (k < mb.size() && mb[k].begin < iv.end) {
            if (mb[k].begin > cursor) {
                out.push_back({cursor, mb[k].begin});
            }
            cursor = std::max(cursor, mb[k].end);
            if (cursor >= iv.end) {
                break;
            }
            ++k;
        }
        if (cursor < iv.end) {
            out.push_back({cursor, iv.end});
        }
    }
    return out;
}

double total_length(const std::vector<Interval> &xs) {
    double sum = 0.0;
    for (const auto &iv : xs) {
        sum += iv.length();
    }
    return sum;
}

} // namespace diarasr
