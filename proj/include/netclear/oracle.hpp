#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netclear/model.hpp"

// Independent brute-force fixed-point finders for desk-size systems.  They
// share no code with the solver's iteration path and exist to cross-check
// it: the enumeration oracle solves a linear system per payment pattern,
// the grid oracle follows the dynamics from a lattice of starts.

namespace netclear {

inline constexpr std::size_t kBruteForceMaxNodes = 12;
inline constexpr std::size_t kGridMaxNodes = 4;
inline constexpr std::size_t kGridMaxSteps = 50;
inline constexpr double kDedupTol = 1e-8;

/// One-parameter family of fixed points: base + t * direction for
/// t in [t_lo, t_hi].  Arises when a cashless absorbing block leaves the
/// payment level on its cycle undetermined.
struct FixedPointFamily {
    Vec base;
    Vec direction;  // scaled so the largest entry is 1
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct FixedPointSet {
    std::vector<Vec> points;  // sorted lexicographically, deduplicated
    bool is_singleton = false;
    bool continuum_detected = false;
    std::optional<FixedPointFamily> family;
    std::size_t singular_candidates = 0;  // payment patterns whose linear system was singular
};

/// Enumerates every full-payment pattern F over the nodes: nodes in F pay
/// their obligation, the rest pay exactly their inflow plus cash.  Each
/// pattern gives a linear system; solutions inside the payment box that
/// respect the inflow bound are fixed points.  A singular pattern yields
/// the family direction from the null space instead of being an error.
/// Throws SizeLimitError above kBruteForceMaxNodes.
FixedPointSet brute_force_fixed_points(const FinancialSystem& sys, double tol = 1e-9);

/// Runs the payment iteration from every point of a uniform lattice over
/// the payment box and keeps the limits that verify as fixed points.
/// Throws SizeLimitError above kGridMaxNodes nodes or kGridMaxSteps steps.
FixedPointSet grid_fixed_points(const FinancialSystem& sys, std::size_t grid_steps,
                                double tol = 1e-9);

}  // namespace netclear
