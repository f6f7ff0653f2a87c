#include "netclear/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "netclear/kernels.hpp"

namespace netclear {

Vec apply_clearing(const FinancialSystem& sys, const Vec& p) {
    Vec out(sys.size());
    kernels::clearing_step(sys, p.data(), out.data());
    return out;
}

IterationTrace iterate_clearing(const FinancialSystem& sys, const Vec& start,
                                const IterateOptions& opts) {
    const std::size_t n = sys.size();
    const std::size_t max_iter = resolve_max_iter(opts, n);

    IterationTrace trace;
    Vec cur = start;
    Vec next(n);
    if (opts.record_trace) trace.iterates.push_back(cur);

    for (std::size_t it = 1; it <= max_iter; ++it) {
        kernels::clearing_step(sys, cur.data(), next.data());
        const double delta = kernels::sup_diff(cur.data(), next.data(), n);
        cur.swap(next);
        trace.step_deltas.push_back(delta);
        trace.iterations = it;
        if (opts.record_trace) trace.iterates.push_back(cur);
        if (delta <= opts.tol) {
            trace.converged = true;
            break;
        }
    }
    trace.last = std::move(cur);
    return trace;
}

BracketTrace bracket_iterate(const FinancialSystem& sys, const IterateOptions& opts) {
    const std::size_t n = sys.size();
    const std::size_t max_iter = resolve_max_iter(opts, n);

    BracketTrace br;
    Vec lo(n, 0.0);
    Vec hi = sys.obligations();
    Vec lo_next(n), hi_next(n);

    if (opts.record_trace) {
        br.lower.iterates.push_back(lo);
        br.upper.iterates.push_back(hi);
    }
    br.gap = kernels::sup_diff(lo.data(), hi.data(), n);
    br.gaps.push_back(br.gap);
    br.converged = br.gap <= opts.tol;

    for (std::size_t it = 1; it <= max_iter && !br.converged; ++it) {
        kernels::clearing_step(sys, lo.data(), lo_next.data());
        kernels::clearing_step(sys, hi.data(), hi_next.data());
        const double d_lo = kernels::sup_diff(lo.data(), lo_next.data(), n);
        const double d_hi = kernels::sup_diff(hi.data(), hi_next.data(), n);
        lo.swap(lo_next);
        hi.swap(hi_next);

        br.iterations = it;
        br.lower.step_deltas.push_back(d_lo);
        br.upper.step_deltas.push_back(d_hi);
        if (opts.record_trace) {
            br.lower.iterates.push_back(lo);
            br.upper.iterates.push_back(hi);
        }
        br.gap = kernels::sup_diff(lo.data(), hi.data(), n);
        br.gaps.push_back(br.gap);

        if (br.gap <= opts.tol) {
            br.converged = true;
        } else if (d_lo == 0.0 && d_hi == 0.0) {
            // Both ends sit on exact fixed points; the bracket can never
            // close.  Two distinct fixed points means a continuum between
            // them on some cashless block.
            break;
        }
    }

    br.lower.iterations = br.upper.iterations = br.iterations;
    br.lower.converged = br.lower.step_deltas.empty() ? true : br.lower.step_deltas.back() <= opts.tol;
    br.upper.converged = br.upper.step_deltas.empty() ? true : br.upper.step_deltas.back() <= opts.tol;

    br.midpoint.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        br.midpoint[j] = std::min(lo[j] + 0.5 * (hi[j] - lo[j]), hi[j]);
    br.lower.last = std::move(lo);
    br.upper.last = std::move(hi);
    return br;
}

std::string_view method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::decompose: return "decompose";
        case SolveMethod::iterate: return "iterate";
        case SolveMethod::bracket: return "bracket";
    }
    return "unknown";
}

namespace {

void fill_residuals(const FinancialSystem& sys, SolveReport& report) {
    const auto ll = check_limited_liability(sys, report.p_star, 0.0);
    const auto ap = check_absolute_priority(sys, report.p_star, 0.0);
    report.residual_limited_liability = std::max(0.0, ll.max_residual());
    report.residual_priority = ap.max_residual();
}

}  // namespace

SolveReport solve_bracketed(const FinancialSystem& sys, const IterateOptions& opts) {
    BracketTrace br = bracket_iterate(sys, opts);
    if (!br.converged) throw BracketGapError(br.gap, br.iterations);

    SolveReport report;
    report.method = SolveMethod::bracket;
    report.p_star = br.midpoint;
    report.iterations = br.iterations;
    report.bracket_gap = br.gap;
    if (opts.record_trace) report.trace = std::move(br);
    fill_residuals(sys, report);
    return report;
}

SolveReport solve_iterate(const FinancialSystem& sys, const IterateOptions& opts) {
    IterationTrace tr = iterate_clearing(sys, Vec(sys.size(), 0.0), opts);
    if (!tr.converged)
        throw NonConvergenceError(tr.step_deltas.empty() ? 0.0 : tr.step_deltas.back(),
                                  tr.iterations);

    SolveReport report;
    report.method = SolveMethod::iterate;
    report.p_star = std::move(tr.last);
    report.iterations = tr.iterations;
    fill_residuals(sys, report);
    return report;
}

SolveReport solve_clearing(const FinancialSystem& sys, const IterateOptions& opts) {
    const std::size_t n = sys.size();
    SolveReport report;
    report.method = SolveMethod::decompose;
    report.p_star.assign(n, 0.0);
    report.partition = partition_nodes(sys);

    if (report.partition->funded.empty()) {
        // Only possible with no cash at all: a cash holder is always in its
        // own orbit.  Every payment is zero by convention.
        for (double c : sys.cash())
            if (c > 0.0) throw std::logic_error("cash-holding node missing from funded set");
    } else {
        const RestrictedSystem sub = restrict_system(sys, report.partition->funded);
        BracketTrace br = bracket_iterate(sub.system, opts);
        if (!br.converged) throw BracketGapError(br.gap, br.iterations);
        for (std::size_t a = 0; a < sub.to_parent.size(); ++a)
            report.p_star[sub.to_parent[a]] = br.midpoint[a];
        report.iterations = br.iterations;
        report.bracket_gap = br.gap;
        if (opts.record_trace) report.trace = std::move(br);
    }

    fill_residuals(sys, report);
    return report;
}

PositivityCertificate positivity_certificate(const FinancialSystem& sys) {
    const std::size_t n = sys.size();
    const Vec& p_bar = sys.obligations();
    const Vec& e = sys.cash();

    PositivityCertificate cert;
    cert.cash_indicator.assign(n, 0.0);
    double mn = p_bar[0];
    for (std::size_t i = 0; i < n; ++i) mn = std::min(mn, p_bar[i]);
    for (std::size_t i = 0; i < n; ++i) {
        if (e[i] > 0.0) {
            cert.cash_indicator[i] = 1.0;
            mn = std::min(mn, e[i]);
        }
    }
    cert.delta = mn / static_cast<double>(n * n);

    Vec iterate(n, 0.0), scratch(n);
    Vec term = cert.cash_indicator;  // cash indicator pushed m-1 rounds forward
    Vec chain_sum = term;
    const Vec zeros(n, 0.0);

    cert.chain_ok.resize(n);
    for (std::size_t m = 1; m <= n; ++m) {
        kernels::clearing_step(sys, iterate.data(), scratch.data());
        iterate.swap(scratch);
        if (m > 1) {
            kernels::weighted_inflow(sys, term.data(), zeros.data(), scratch.data());
            term.swap(scratch);
            for (std::size_t j = 0; j < n; ++j) chain_sum[j] += term[j];
        }
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j)
            ok = ok && iterate[j] >= cert.delta * chain_sum[j];
        cert.chain_ok[m - 1] = ok;
    }

    cert.strictly_positive_at_n =
        std::all_of(iterate.begin(), iterate.end(), [](double v) { return v > 0.0; });
    cert.iterate_at_n = std::move(iterate);
    return cert;
}

Vec iterated_inflow_bound(const FinancialSystem& sys, const Vec& p, std::size_t k) {
    const std::size_t n = sys.size();
    const Vec zeros(n, 0.0);
    Vec acc(n, 0.0), term = sys.cash(), scratch(n);

    for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t j = 0; j < n; ++j) acc[j] += term[j];
        kernels::weighted_inflow(sys, term.data(), zeros.data(), scratch.data());
        term.swap(scratch);
    }

    Vec pushed = p;
    for (std::size_t t = 0; t < k; ++t) {
        kernels::weighted_inflow(sys, pushed.data(), zeros.data(), scratch.data());
        pushed.swap(scratch);
    }
    for (std::size_t j = 0; j < n; ++j) acc[j] += pushed[j];
    return acc;
}

}  // namespace netclear
