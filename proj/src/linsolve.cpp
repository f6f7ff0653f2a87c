#include "netclear/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace netclear::detail {

LinearSolution solve_with_nullspace(std::vector<double> a, Vec rhs, std::size_t m,
                                    double pivot_tol) {
    LinearSolution out;
    if (m == 0) {
        out.kind = LinearSolution::Kind::unique;
        return out;
    }

    std::vector<std::size_t> pivot_row_of_col(m, m);  // m = free column
    std::vector<std::size_t> row_perm(m);
    for (std::size_t r = 0; r < m; ++r) row_perm[r] = r;

    std::size_t rank = 0;
    for (std::size_t c = 0; c < m && rank < m; ++c) {
        std::size_t best = rank;
        double best_abs = std::abs(a[row_perm[rank] * m + c]);
        for (std::size_t r = rank + 1; r < m; ++r) {
            const double v = std::abs(a[row_perm[r] * m + c]);
            if (v > best_abs) {
                best = r;
                best_abs = v;
            }
        }
        if (best_abs <= pivot_tol) continue;  // free column

        std::swap(row_perm[rank], row_perm[best]);
        const std::size_t pr = row_perm[rank];
        const double piv = a[pr * m + c];
        // Whole-row operations: earlier free columns may still hold nonzero
        // entries and must stay consistent with the right-hand side.
        for (std::size_t j = 0; j < m; ++j) a[pr * m + j] /= piv;
        rhs[pr] /= piv;

        // Jordan elimination: clear the column in every other row so free
        // columns can be read off directly.
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t rr = row_perm[r];
            if (rr == pr) continue;
            const double f = a[rr * m + c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) a[rr * m + j] -= f * a[pr * m + j];
            rhs[rr] -= f * rhs[pr];
        }
        pivot_row_of_col[c] = pr;
        ++rank;
    }

    // Rows below the rank have all-zero coefficients; a nonzero right-hand
    // side there means no solution exists.
    for (std::size_t r = rank; r < m; ++r) {
        if (std::abs(rhs[row_perm[r]]) > pivot_tol) {
            out.kind = LinearSolution::Kind::inconsistent;
            return out;
        }
    }

    out.particular.assign(m, 0.0);
    for (std::size_t c = 0; c < m; ++c)
        if (pivot_row_of_col[c] != m) out.particular[c] = rhs[pivot_row_of_col[c]];

    if (rank == m) {
        out.kind = LinearSolution::Kind::unique;
        return out;
    }

    out.kind = LinearSolution::Kind::family;
    for (std::size_t f = 0; f < m; ++f) {
        if (pivot_row_of_col[f] != m) continue;
        Vec dir(m, 0.0);
        dir[f] = 1.0;
        for (std::size_t c = 0; c < m; ++c)
            if (pivot_row_of_col[c] != m) dir[c] = -a[pivot_row_of_col[c] * m + f];
        out.null_basis.push_back(std::move(dir));
    }
    return out;
}

}  // namespace netclear::detail
