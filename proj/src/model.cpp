#include "netclear/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "netclear/kernels.hpp"

namespace netclear {

RawSystem FinancialSystem::to_raw() const {
    RawSystem raw;
    raw.n = n_;
    raw.pi.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
        raw.pi[i].assign(share_row(i), share_row(i) + n_);
    raw.p_bar = p_bar_;
    raw.e = e_;
    return raw;
}

namespace {

// Scales a row to unit sum, then rewrites its last positive entry so that
// the plain left-to-right sum is exactly 1.0.  Dividing by an exact 1.0 is
// the identity, which is what makes validation idempotent at the bit level.
void normalize_row(double* row, std::size_t n, double sum) {
    if (sum == 1.0) return;
    for (std::size_t j = 0; j < n; ++j) row[j] /= sum;

    std::size_t last = n;
    for (std::size_t j = n; j-- > 0;) {
        if (row[j] > 0.0) { last = j; break; }
    }
    if (last == n) return;  // unreachable for rows that passed the sum check

    double prefix = 0.0;
    for (std::size_t j = 0; j < last; ++j) prefix += row[j];
    const double adjusted = 1.0 - prefix;
    if (adjusted > 0.0) row[last] = adjusted;
}

}  // namespace

FinancialSystem validate_system(const RawSystem& raw, double row_sum_tol) {
    const std::size_t n = raw.n;
    if (n == 0) throw DimensionError("system must have at least one node");
    if (raw.pi.size() != n)
        throw DimensionError("pi has " + std::to_string(raw.pi.size()) + " rows, expected " +
                             std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (raw.pi[i].size() != n)
            throw DimensionError("pi row " + std::to_string(i + 1) + " has " +
                                 std::to_string(raw.pi[i].size()) + " entries, expected " +
                                 std::to_string(n));
    }
    if (raw.p_bar.size() != n)
        throw DimensionError("p_bar has " + std::to_string(raw.p_bar.size()) +
                             " entries, expected " + std::to_string(n));
    if (raw.e.size() != n)
        throw DimensionError("e has " + std::to_string(raw.e.size()) + " entries, expected " +
                             std::to_string(n));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (raw.pi[i][j] < 0.0 || std::isnan(raw.pi[i][j]))
                throw NegativeEntryError("pi", i * n + j + 1, raw.pi[i][j]);
    for (std::size_t i = 0; i < n; ++i)
        if (raw.e[i] < 0.0 || std::isnan(raw.e[i]))
            throw NegativeEntryError("e", i + 1, raw.e[i]);
    for (std::size_t i = 0; i < n; ++i)
        if (!(raw.p_bar[i] > 0.0) || !std::isfinite(raw.p_bar[i]))
            throw NonPositiveObligationError(i + 1, raw.p_bar[i]);

    Vec shares(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += raw.pi[i][j];
        if (std::abs(sum - 1.0) > row_sum_tol) throw RowSumError(i + 1, sum);
        std::copy(raw.pi[i].begin(), raw.pi[i].end(), shares.begin() + i * n);
        normalize_row(shares.data() + i * n, n, sum);
    }

    return FinancialSystem(n, std::move(shares), raw.p_bar, raw.e);
}

bool in_payment_box(const FinancialSystem& sys, const Vec& p, double slack) {
    if (p.size() != sys.size()) return false;
    const Vec& p_bar = sys.obligations();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!(p[i] >= -slack) || !(p[i] <= p_bar[i] + slack)) return false;
    return true;
}

double FeasibilityCheck::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

FeasibilityCheck check_limited_liability(const FinancialSystem& sys, const Vec& p, double tol) {
    const std::size_t n = sys.size();
    FeasibilityCheck out;
    out.ok.resize(n);
    out.residuals.resize(n);

    Vec available(n);
    kernels::weighted_inflow(sys, p.data(), sys.cash().data(), available.data());
    for (std::size_t j = 0; j < n; ++j) {
        out.residuals[j] = p[j] - available[j];
        out.ok[j] = p[j] <= available[j] + tol;
        out.all_ok = out.all_ok && out.ok[j];
    }
    return out;
}

FeasibilityCheck check_absolute_priority(const FinancialSystem& sys, const Vec& p, double tol) {
    const std::size_t n = sys.size();
    FeasibilityCheck out;
    out.ok.resize(n);
    out.residuals.resize(n);

    Vec available(n);
    kernels::weighted_inflow(sys, p.data(), sys.cash().data(), available.data());
    const Vec& p_bar = sys.obligations();
    for (std::size_t j = 0; j < n; ++j) {
        const double d_pass_through = std::abs(p[j] - available[j]);
        const double d_full_payment = std::abs(p[j] - p_bar[j]);
        out.residuals[j] = std::min(d_pass_through, d_full_payment);
        out.ok[j] = out.residuals[j] <= tol;
        out.all_ok = out.all_ok && out.ok[j];
    }
    return out;
}

}  // namespace netclear
