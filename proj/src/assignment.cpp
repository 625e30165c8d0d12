#include "diarasr/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diarasr {

namespace {

// Hungarian algorithm with row/column potentials, O(n^3). Returns the
// optimal total only; lexicographic selection happens in the caller.
double hungarian_optimum(const std::vector<std::vector<double>> &a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) {
        return 0.0;
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) {
                    continue;
                }
                double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) {
            total += a[p[j] - 1][j - 1];
        }
    }
    return total;
}

void validate_square(const std::vector<std::vector<double>> &cost) {
    for (const auto &row : cost) {
        if (row.size() != cost.size()) {
            throw std::invalid_argument(
                "min_cost_assignment: cost matrix must be square");
        }
        for (double c : row) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument(
                    "min_cost_assignment: costs must be finite");
            }
        }
    }
}

} // namespace

std::vector<int>
min_cost_assignment(const std::vector<std::vector<double>> &cost,
                    double tie_tol) {
    validate_square(cost);
    const std::size_t n = cost.size();
    if (n == 0) {
        return {};
    }

    const double optimum = hungarian_optimum(cost);
    const double tol = tie_tol * std::max(1.0, std::fabs(optimum));

    // Fix rows in order, each to the smallest column that still reaches the
    // optimal total; every candidate is checked by re-solving the reduced
    // problem. Rows/columns are small (speakers), so the extra O(n^2)
    // Hungarian solves are cheap.
    std::vector<int> result(n, -1);
    std::vector<int> free_cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        free_cols[j] = static_cast<int>(j);
    }
    double fixed_cost = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        bool locked = false;
        for (std::size_t ci = 0; ci < free_cols.size() && !locked; ++ci) {
            int c = free_cols[ci];
            std::vector<std::vector<double>> sub;
            sub.reserve(n - r - 1);
            for (std::size_t rr = r + 1; rr < n; ++rr) {
                std::vector<double> row;
                row.reserve(free_cols.size() - 1);
                for (std::size_t cj = 0; cj < free_cols.size(); ++cj) {
                    if (cj != ci) {
                        row.push_back(cost[rr][free_cols[cj]]);
                    }
                }
                sub.push_back(std::move(row));
            }
            double candidate =
                fixed_cost + cost[r][c] + hungarian_optimum(sub);
            if (candidate <= optimum + tol) {
                result[r] = c;
                fixed_cost += cost[r][c];
                free_cols.erase(free_cols.begin() + ci);
                locked = true;
            }
        }
        if (!locked) {
            // Unreachable for a correct optimum; guard against tolerance
            // starvation by taking the first free column.
            result[r] = free_cols.front();
            fixed_cost += cost[r][result[r]];
            free_cols.erase(free_cols.begin());
        }
    }
    return result;
}

double assignment_total(const std::vector<std::vector<double>> &cost,
                        const std::vector<int> &row_to_col) {
    double total = 0.0;
    for (std::size_t r = 0; r < row_to_col.size(); ++r) {
        total += cost[r][row_to_col[r]];
    }
    return total;
}

} // namespace diarasr
