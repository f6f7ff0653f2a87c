#pragma once

#include <cstddef>

#include "netclear/model.hpp"

// Data-parallel inner loops of the solver.  Every kernel exists twice: a
// plain serial version under reference:: and an OpenMP version under
// kernels::.  The two must agree bit for bit -- the parallel versions split
// work by output element and keep the per-element summation order identical
// to the serial code, and tests compare the paths with exact equality.
// Production code calls kernels::; reference:: is kept for tests and the
// benchmark.

namespace netclear::reference {

/// out[j] = base[j] + sum_i p[i] * share(i, j), terms added in ascending i.
void weighted_inflow(const FinancialSystem& sys, const double* p, const double* base,
                     double* out);

/// One synchronous payment round: every node pays the smaller of its
/// obligation and its inflow plus cash.
void clearing_step(const FinancialSystem& sys, const double* p, double* out);

double sup_diff(const double* a, const double* b, std::size_t n);

}  // namespace netclear::reference

namespace netclear::kernels {

void weighted_inflow(const FinancialSystem& sys, const double* p, const double* base,
                     double* out);

void clearing_step(const FinancialSystem& sys, const double* p, double* out);

double sup_diff(const double* a, const double* b, std::size_t n);

}  // namespace netclear::kernels
