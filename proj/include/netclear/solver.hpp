#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "netclear/graph.hpp"
#include "netclear/model.hpp"

namespace netclear {

/// One payment round: p'(j) = min(inflow(j) + cash(j), obligation(j)).
/// The map is increasing and concave on the payment box, which is what the
/// iteration below relies on.
Vec apply_clearing(const FinancialSystem& sys, const Vec& p);

struct IterateOptions {
    double tol = 1e-12;        // sup-norm threshold on successive iterates
    std::size_t max_iter = 0;  // 0 means 100 * n + 1000
    bool record_trace = false; // keep every iterate, not just the last
};

inline std::size_t resolve_max_iter(const IterateOptions& opts, std::size_t n) {
    return opts.max_iter != 0 ? opts.max_iter : 100 * n + 1000;
}

struct IterationTrace {
    std::vector<Vec> iterates;       // starts with the initial point; only when record_trace
    Vec last;                        // final iterate, always present
    std::vector<double> step_deltas; // sup-norm distance between successive iterates
    bool converged = false;
    std::size_t iterations = 0;      // payment rounds applied
};

/// Repeats apply_clearing from `start` until the sup-norm step falls to tol
/// or max_iter rounds pass.  Never throws for non-convergence; the trace
/// reports what happened and callers that need convergence decide.
IterationTrace iterate_clearing(const FinancialSystem& sys, const Vec& start,
                                const IterateOptions& opts = {});

/// Lockstep iteration from both ends of the payment box.  The lower chain
/// (from zero) is componentwise nondecreasing, the upper chain (from the
/// full obligations) nonincreasing, and the lower chain never passes the
/// upper one, so the two bracket every fixed point at every step.
struct BracketTrace {
    IterationTrace lower;
    IterationTrace upper;
    std::vector<double> gaps;  // sup-norm bracket width, entry 0 before any step
    double gap = 0.0;          // final bracket width
    Vec midpoint;
    bool converged = false;    // gap closed to within tol
    std::size_t iterations = 0;
};

/// No-throw core of the bracketed solve.  Stops when the gap closes to tol,
/// when both chains sit on exact fixed points with the gap still open (it
/// can never close after that), or at max_iter.
BracketTrace bracket_iterate(const FinancialSystem& sys, const IterateOptions& opts = {});

enum class SolveMethod { decompose, iterate, bracket };

std::string_view method_name(SolveMethod m);

struct SolveReport {
    Vec p_star;
    SolveMethod method = SolveMethod::decompose;
    std::size_t iterations = 0;
    double residual_limited_liability = 0.0;  // max violation of the inflow bound, 0 if feasible
    double residual_priority = 0.0;           // max distance to the nearer priority alternative
    std::optional<double> bracket_gap;
    std::optional<NodePartition> partition;
    std::optional<BracketTrace> trace;  // only when record_trace was set
};

/// Two-sided solve on the full system.  When every node can be reached from
/// cash, both chains meet and the final gap bounds the distance to the
/// unique fixed point from both sides; the reported payments are the
/// bracket midpoint.  Throws BracketGapError when the gap cannot close.
SolveReport solve_bracketed(const FinancialSystem& sys, const IterateOptions& opts = {});

/// Single-chain solve iterating from zero.  Throws NonConvergenceError when
/// the step size does not reach tol within max_iter.
SolveReport solve_iterate(const FinancialSystem& sys, const IterateOptions& opts = {});

/// The canonical solver.  Partitions the nodes, pins upstream and stranded
/// nodes to zero (their payments are zero in every feasible outcome, by
/// convention for the stranded ones), restricts to the funded block where
/// the fixed point is unique and strictly positive, solves it with the
/// bracketed iteration, and scatters back.
SolveReport solve_clearing(const FinancialSystem& sys, const IterateOptions& opts = {});

/// Evidence that iterating from zero reaches a strictly positive vector
/// within n rounds.  delta is (1/n^2) * min over all obligations and all
/// positive cash values; chain_ok[m-1] records whether the m-th iterate
/// dominates delta times the cash indicator pushed m-1 rounds through the
/// network and summed.  When every node is cash accessible the final
/// iterate must be strictly positive; the certificate reports failures
/// rather than throwing.
struct PositivityCertificate {
    double delta = 0.0;
    Vec cash_indicator;          // 1.0 where cash > 0, else 0.0
    std::vector<char> chain_ok;  // m = 1..n
    bool strictly_positive_at_n = false;
    Vec iterate_at_n;            // the n-th iterate from zero
};

PositivityCertificate positivity_certificate(const FinancialSystem& sys);

/// cash + cash*Pi + ... + cash*Pi^(k-1) + p*Pi^k, the total that can have
/// flowed into each node after k rounds.  For any p satisfying the limited
/// liability bound exactly, the result dominates p componentwise; at
/// upstream nodes it exposes how payment mass drains away.
Vec iterated_inflow_bound(const FinancialSystem& sys, const Vec& p, std::size_t k);

}  // namespace netclear
