#include "netclear/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netclear::reference {

void weighted_inflow(const FinancialSystem& sys, const double* p, const double* base,
                     double* out) {
    const std::size_t n = sys.size();
    const double* m = sys.shares_data();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = base[j];
        for (std::size_t i = 0; i < n; ++i) acc += p[i] * m[i * n + j];
        out[j] = acc;
    }
}

void clearing_step(const FinancialSystem& sys, const double* p, double* out) {
    const std::size_t n = sys.size();
    weighted_inflow(sys, p, sys.cash().data(), out);
    const Vec& p_bar = sys.obligations();
    for (std::size_t j = 0; j < n; ++j) out[j] = std::min(out[j], p_bar[j]);
}

double sup_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace netclear::reference

namespace netclear::kernels {

// Threads own contiguous column blocks and stream the matrix rows across
// their block, so per-column accumulation stays in ascending row order and
// the result is bit-identical to the reference loop.
void weighted_inflow(const FinancialSystem& sys, const double* p, const double* base,
                     double* out) {
    const std::size_t n = sys.size();
    const double* m = sys.shares_data();
#ifdef _OPENMP
#pragma omp parallel
    {
        const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
        const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
        const std::size_t lo = n * tid / nt;
        const std::size_t hi = n * (tid + 1) / nt;
        for (std::size_t j = lo; j < hi; ++j) out[j] = base[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double w = p[i];
            const double* row = m + i * n;
            for (std::size_t j = lo; j < hi; ++j) out[j] += w * row[j];
        }
    }
#else
    for (std::size_t j = 0; j < n; ++j) out[j] = base[j];
    for (std::size_t i = 0; i < n; ++i) {
        const double w = p[i];
        const double* row = m + i * n;
        for (std::size_t j = 0; j < n; ++j) out[j] += w * row[j];
    }
#endif
}

void clearing_step(const FinancialSystem& sys, const double* p, double* out) {
    const std::size_t n = sys.size();
    weighted_inflow(sys, p, sys.cash().data(), out);
    const double* p_bar = sys.obligations().data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t j = 0; j < n; ++j) out[j] = std::min(out[j], p_bar[j]);
}

double sup_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
// max is exactly associative, so the reduction order cannot change the result.
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace netclear::kernels
