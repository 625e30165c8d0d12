#include "diarasr/edit_distance.hpp"

#include <vector>

namespace diarasr {

namespace {

// DP cell: (total errors, substitutions), compared lexicographically.
// Minimizing substitutions at equal total maximizes matches, and the
// remaining deletion/insertion split is then forced by the lengths:
//   D - I = |ref| - |hyp|,  D + I = total - S.
struct Cell {
    long long total;
    long long subs;

    bool operator<(const Cell &o) const {
        return total < o.total || (total == o.total && subs < o.subs);
    }
    Cell operator+(const Cell &o) const {
        return {total + o.total, subs + o.subs};
    }
};

ErrorCounts counts_from_cell(Cell cell, long long ref_len, long long hyp_len) {
    ErrorCounts c;
    c.substitutions = cell.subs;
    long long di = cell.total - cell.subs;   // D + I
    long long diff = ref_len - hyp_len;      // D - I
    c.deletions = (di + diff) / 2;
    c.insertions = (di - diff) / 2;
    c.ref_tokens = ref_len;
    return c;
}

} // namespace

ErrorCounts edit_distance(std::span<const std::string> ref,
                          std::span<const std::string> hyp) {
    const std::size_t n = ref.size();
    const std::size_t m = hyp.size();
    std::vector<Cell> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        prev[j] = {static_cast<long long>(j), 0};
    }
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = {static_cast<long long>(i), 0};
        for (std::size_t j = 1; j <= m; ++j) {
            Cell best = prev[j - 1] +
                        (ref[i - 1] == hyp[j - 1] ? Cell{0, 0} : Cell{1, 1});
            Cell del = prev[j] + Cell{1, 0};
            Cell ins = cur[j - 1] + Cell{1, 0};
            if (del < best) {
                best = del;
            }
            if (ins < best) {
                best = ins;
            }
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return counts_from_cell(prev[m], static_cast<long long>(n),
                            static_cast<long long>(m));
}

} // namespace diarasr
