#pragma once

#include <vector>

namespace diarasr {

// Square minimum-cost assignment (Hungarian with potentials, O(n^3)).
// Returns row -> column. Among equal-cost optima the result is the
// lexicographically smallest (row 0's column, then row 1's, ...), so
// callers get deterministic speaker mappings. tie_tol absorbs the
// floating-point noise of re-summed costs; it is scaled by max(1, |opt|).
std::vector<int>
min_cost_assignment(const std::vector<std::vector<double>> &cost,
                    double tie_tol = 1e-9);

double assignment_total(const std::vector<std::vector<double>> &cost,
                        const std::vector<int> &row_to_col);

} // namespace diarasr
