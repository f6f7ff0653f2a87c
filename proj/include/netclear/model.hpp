#pragma once

#include <cstddef>
#include <vector>

#include "netclear/errors.hpp"

namespace netclear {

using Vec = std::vector<double>;

inline constexpr double kRowSumTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-9;

/// Unchecked system data as it appears on disk:
/// n nodes, an n x n matrix of relative liability shares (row i holds the
/// fractions of node i's total obligation owed to each creditor), the
/// nominal obligation of each node, and its external cash.
struct RawSystem {
    std::size_t n = 0;
    std::vector<Vec> pi;  // liability shares, one row per debtor
    Vec p_bar;            // nominal obligations
    Vec e;                // external cash
};

/// A validated liability network.  Construction goes through
/// validate_system(); instances are immutable afterwards, so they can be
/// shared freely across threads.
class FinancialSystem {
public:
    std::size_t size() const { return n_; }

    /// Share of `debtor`'s obligation owed to `creditor`.
    double share(std::size_t debtor, std::size_t creditor) const {
        return shares_[debtor * n_ + creditor];
    }
    const double* share_row(std::size_t debtor) const {
        return shares_.data() + debtor * n_;
    }
    const double* shares_data() const { return shares_.data(); }

    const Vec& obligations() const { return p_bar_; }
    const Vec& cash() const { return e_; }

    RawSystem to_raw() const;

    bool operator==(const FinancialSystem&) const = default;

private:
    FinancialSystem(std::size_t n, Vec shares, Vec p_bar, Vec e)
        : n_(n), shares_(std::move(shares)), p_bar_(std::move(p_bar)), e_(std::move(e)) {}

    friend FinancialSystem validate_system(const RawSystem&, double);

    std::size_t n_;
    Vec shares_;  // row-major, each row sums to 1 exactly as summed in index order
    Vec p_bar_;
    Vec e_;
};

/// Checks shape, signs and row sums, then normalizes each liability row to
/// an exact unit sum.  Checks run in a fixed order: dimensions, negative
/// shares, negative cash, non-positive obligations, row sums.  Row sums may
/// deviate from 1 by at most `row_sum_tol` on input (text round-trips
/// perturb them); anything further off is rejected, as is any negative
/// entry, however small.  Validating an already-validated system is a
/// bitwise no-op.
FinancialSystem validate_system(const RawSystem& raw, double row_sum_tol = kRowSumTol);

/// True iff 0 - slack <= p(i) <= obligation(i) + slack for all i.
bool in_payment_box(const FinancialSystem& sys, const Vec& p, double slack = 0.0);

struct FeasibilityCheck {
    std::vector<char> ok;  // per node
    Vec residuals;         // per node, see the producing check for semantics
    bool all_ok = true;

    double max_residual() const;
};

/// Limited liability: node j may pay at most what flows in plus its own
/// cash.  ok(j) iff p(j) <= inflow(j) + cash(j) + tol, where
/// inflow(j) = sum_i p(i) * share(i, j).  residual(j) = p(j) - inflow(j) - cash(j),
/// so positive residuals are violations.
FeasibilityCheck check_limited_liability(const FinancialSystem& sys, const Vec& p,
                                         double tol = kFeasibilityTol);

/// Absolute priority: node j either passes on everything it has
/// (p(j) = inflow(j) + cash(j)) or pays its obligation in full
/// (p(j) = obligation(j)).  ok(j) iff one of the two holds within tol;
/// residual(j) is the distance to the nearer alternative.
FeasibilityCheck check_absolute_priority(const FinancialSystem& sys, const Vec& p,
                                         double tol = kFeasibilityTol);

}  // namespace netclear
