#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace trimatch::detail {

inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

/// Square cost matrix; kForbidden marks a missing edge.
class CostMatrix {
public:
    explicit CostMatrix(std::size_t n, double fill = kForbidden) : n_(n), cells_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return cells_[r * n_ + c]; }

private:
    std::size_t n_;
    std::vector<double> cells_;
};

struct LapSolution {
    std::vector<std::size_t> row_to_col;
    double cost = 0.0;
    // Optimal duals: cost(r, c) - row_potential[r] - col_potential[c] >= 0,
    // with equality on every edge used by any optimal assignment.
    std::vector<double> row_potential;
    std::vector<double> col_potential;
};

/// Minimum-cost perfect assignment by successive shortest augmenting paths
/// with node potentials (one augmentation per row). Throws InvalidInput when
/// no perfect assignment over finite edges exists.
LapSolution solve_lap(const CostMatrix& cost);

/// Among all optimal assignments, pick the lexicographically smallest one
/// under a caller-defined option order.
///
/// `rows_in_order[s]` is the s-th row that carries a vector entry; for that
/// row, `options[s]` lists groups of columns in preference order (a group is
/// taken as one choice, e.g. interchangeable dummy columns). Rows not listed
/// are free. Returns the refined row -> column assignment.
std::vector<std::size_t> lexicographic_optimum(const CostMatrix& cost, const LapSolution& optimum,
                                               const std::vector<std::size_t>& rows_in_order,
                                               const std::vector<std::vector<std::vector<std::size_t>>>& options);

}  // namespace trimatch::detail
