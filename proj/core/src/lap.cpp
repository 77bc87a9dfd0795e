#include "trimatch/detail/lap.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace trimatch::detail {

LapSolution solve_lap(const CostMatrix& cost) {
    const std::size_t n = cost.size();
    LapSolution out;
    out.row_to_col.assign(n, 0);
    out.row_potential.assign(n, 0.0);
    out.col_potential.assign(n, 0.0);
    if (n == 0) return out;

    // 1-based arrays; index 0 is the virtual column that roots each search.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> col_owner(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (std::size_t row = 1; row <= n; ++row) {
        col_owner[0] = row;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kForbidden);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = col_owner[j0];
            double delta = kForbidden;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double c = cost(i0 - 1, j - 1);
                if (c != kForbidden) {
                    const double cur = c - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 == 0) throw InvalidInput("assignment problem has no feasible perfect matching");
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else if (minv[j] != kForbidden) {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_owner[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (std::size_t j = 1; j <= n; ++j) out.row_to_col[col_owner[j] - 1] = j - 1;
    for (std::size_t i = 0; i < n; ++i) {
        out.row_potential[i] = u[i + 1];
        out.col_potential[i] = v[i + 1];
        out.cost += cost(i, out.row_to_col[i]);
    }
    return out;
}

std::vector<std::size_t> lexicographic_optimum(const CostMatrix& cost, const LapSolution& optimum,
                                               const std::vector<std::size_t>& rows_in_order,
                                               const std::vector<std::vector<std::vector<std::size_t>>>& options) {
    const std::size_t n = cost.size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    double scale = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (cost(r, c) != kForbidden) scale = std::max(scale, std::abs(cost(r, c)));
        }
    }
    const double tol = 1e-9 * scale;

    std::vector<char> tight(n * n, 0);
    std::vector<std::vector<std::size_t>> tight_cols(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double w = cost(r, c);
            if (w == kForbidden) continue;
            if (w - optimum.row_potential[r] - optimum.col_potential[c] <= tol) {
                tight[r * n + c] = 1;
                tight_cols[r].push_back(c);
            }
        }
    }

    std::vector<std::size_t> row_to_col = optimum.row_to_col;
    std::vector<std::size_t> col_to_row(n, kNone);
    for (std::size_t r = 0; r < n; ++r) {
        col_to_row[row_to_col[r]] = r;
        tight[r * n + row_to_col[r]] = 1;  // the optimum's own edges are tight by construction
    }
    for (std::size_t r = 0; r < n; ++r) {
        auto& tc = tight_cols[r];
        if (std::find(tc.begin(), tc.end(), row_to_col[r]) == tc.end()) tc.push_back(row_to_col[r]);
    }

    // lock[r * n + c] is consulted only for locked rows.
    std::vector<char> locked(n, 0), lock(n * n, 0), visited(n, 0);
    auto allowed = [&](std::size_t r, std::size_t c) { return !locked[r] || lock[r * n + c]; };

    std::function<bool(std::size_t)> augment = [&](std::size_t r) -> bool {
        for (std::size_t c : tight_cols[r]) {
            if (visited[c] || !allowed(r, c)) continue;
            visited[c] = 1;
            if (col_to_row[c] == kNone || augment(col_to_row[c])) {
                row_to_col[r] = c;
                col_to_row[c] = r;
                return true;
            }
        }
        return false;
    };

    for (std::size_t s = 0; s < rows_in_order.size(); ++s) {
        const std::size_t r = rows_in_order[s];
        for (const auto& group : options[s]) {
            const bool reachable =
                std::any_of(group.begin(), group.end(), [&](std::size_t c) { return tight[r * n + c] != 0; });
            if (!reachable) continue;

            locked[r] = 1;
            std::fill(lock.begin() + static_cast<std::ptrdiff_t>(r * n),
                      lock.begin() + static_cast<std::ptrdiff_t>((r + 1) * n), 0);
            for (std::size_t c : group) lock[r * n + c] = 1;
            if (lock[r * n + row_to_col[r]]) break;

            const std::size_t previous = row_to_col[r];
            col_to_row[previous] = kNone;
            row_to_col[r] = kNone;
            std::fill(visited.begin(), visited.end(), 0);
            if (augment(r)) break;
            row_to_col[r] = previous;
            col_to_row[previous] = r;
            locked[r] = 0;
        }
    }
    return row_to_col;
}

}  // namespace trimatch::detail
