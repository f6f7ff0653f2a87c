#pragma once

#include <cstddef>
#include <vector>

#include "netclear/model.hpp"

namespace netclear::detail {

/// Outcome of a small dense solve a * x = rhs with null-space extraction.
/// Used by the brute-force oracle, where a singular system is a finding
/// (it signals a one-parameter family of fixed points), not a failure.
struct LinearSolution {
    enum class Kind { unique, family, inconsistent };
    Kind kind = Kind::unique;
    Vec particular;               // free variables at zero; empty when inconsistent
    std::vector<Vec> null_basis;  // one vector per free variable
};

/// Gauss-Jordan with partial pivoting on the augmented system.  `a` is
/// m x m row-major and is consumed.  Pivots at or below pivot_tol mark a
/// free column.
LinearSolution solve_with_nullspace(std::vector<double> a, Vec rhs, std::size_t m,
                                    double pivot_tol = 1e-10);

}  // namespace netclear::detail
