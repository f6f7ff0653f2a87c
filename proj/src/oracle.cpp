#include "netclear/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "netclear/kernels.hpp"
#include "netclear/linsolve.hpp"
#include "netclear/solver.hpp"

namespace netclear {

namespace {

constexpr std::size_t kGridSettleIters = 200;

// Accepts a candidate only if it sits in the payment box (up to rounding),
// respects the inflow bound, and verifies as a fixed point.  Clamps the
// accepted point onto the box exactly.
bool screen_candidate(const FinancialSystem& sys, Vec& p, double tol) {
    if (!in_payment_box(sys, p, tol)) return false;
    const Vec& p_bar = sys.obligations();
    for (std::size_t j = 0; j < p.size(); ++j)
        p[j] = std::clamp(p[j], 0.0, p_bar[j]);
    if (!check_limited_liability(sys, p, tol).all_ok) return false;
    const Vec stepped = apply_clearing(sys, p);
    return kernels::sup_diff(stepped.data(), p.data(), p.size()) <= tol;
}

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool empty = false;

    // Intersect with { t : a + t * b >= 0 }.
    void cut(double a, double b, double slack) {
        constexpr double kCoeffEps = 1e-13;
        if (std::abs(b) <= kCoeffEps) {
            if (a < -slack) empty = true;
            return;
        }
        const double bound = -a / b;
        if (b > 0.0)
            lo = std::max(lo, bound);
        else
            hi = std::min(hi, bound);
        if (lo > hi) empty = true;
    }
};

// Scales the direction so its largest-magnitude entry is exactly 1 and
// rescales the interval accordingly.
void normalize_direction(Vec& v, Interval& iv) {
    double s = 0.0;
    for (double x : v)
        if (std::abs(x) > std::abs(s)) s = x;
    if (s == 0.0) return;
    for (double& x : v) x /= s;
    double lo = iv.lo * s, hi = iv.hi * s;
    if (s < 0.0) std::swap(lo, hi);
    iv.lo = lo;
    iv.hi = hi;
}

struct CandidateYield {
    std::vector<Vec> points;
    std::vector<std::pair<unsigned, FixedPointFamily>> families;
    bool singular = false;
};

// Full-payment pattern `mask`: bit j set means node j pays its obligation;
// the rest pay exactly their inflow plus cash.
CandidateYield evaluate_pattern(const FinancialSystem& sys, unsigned mask, double tol) {
    const std::size_t n = sys.size();
    const Vec& p_bar = sys.obligations();
    const Vec& e = sys.cash();
    CandidateYield yield;

    std::vector<std::size_t> deficit;  // nodes paying inflow + cash
    for (std::size_t j = 0; j < n; ++j)
        if (!(mask & (1u << j))) deficit.push_back(j);
    const std::size_t m = deficit.size();

    // p(d_a) - sum_b p(d_b) * share(d_b, d_a) = cash(d_a) + sum_{f in F} obligation(f) * share(f, d_a)
    std::vector<double> a(m * m);
    Vec rhs(m);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t j = deficit[r];
        for (std::size_t cidx = 0; cidx < m; ++cidx) {
            const double coef = (deficit[cidx] == j ? 1.0 : 0.0) - sys.share(deficit[cidx], j);
            a[r * m + cidx] = coef;
        }
        double b = e[j];
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) b += p_bar[i] * sys.share(i, j);
        rhs[r] = b;
    }

    auto embed = [&](const Vec& x_deficit, bool full_payments_on_mask) {
        Vec p(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (full_payments_on_mask && (mask & (1u << j))) p[j] = p_bar[j];
        for (std::size_t ai = 0; ai < m; ++ai) p[deficit[ai]] = x_deficit[ai];
        return p;
    };

    const auto sol = detail::solve_with_nullspace(std::move(a), std::move(rhs), m);
    if (sol.kind == detail::LinearSolution::Kind::inconsistent) {
        yield.singular = true;
        return yield;
    }

    if (sol.kind == detail::LinearSolution::Kind::unique) {
        Vec p = embed(sol.particular, true);
        if (screen_candidate(sys, p, tol)) yield.points.push_back(std::move(p));
        return yield;
    }

    // Singular but consistent: a one-parameter family per null direction.
    yield.singular = true;
    const Vec base = embed(sol.particular, true);
    Vec base_inflow(n);
    kernels::weighted_inflow(sys, base.data(), e.data(), base_inflow.data());

    for (const Vec& null_dir : sol.null_basis) {
        Vec dir = embed(null_dir, false);

        Interval iv;
        // Keep every deficit node inside the payment box.
        for (std::size_t ai = 0; ai < m; ++ai) {
            const std::size_t j = deficit[ai];
            iv.cut(base[j], dir[j], tol);                      // p(t) >= 0
            iv.cut(p_bar[j] - base[j], -dir[j], tol);          // p(t) <= obligation
            if (iv.empty) break;
        }
        if (iv.empty) continue;

        // Full payers must still be covered by their inflow plus cash.
        const Vec zeros(n, 0.0);
        Vec dir_inflow(n);
        kernels::weighted_inflow(sys, dir.data(), zeros.data(), dir_inflow.data());
        for (std::size_t j = 0; j < n && !iv.empty; ++j)
            if (mask & (1u << j)) iv.cut(base_inflow[j] - p_bar[j], dir_inflow[j], tol);
        if (iv.empty) continue;

        normalize_direction(dir, iv);

        auto point_at = [&](double t) {
            Vec p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = base[j] + t * dir[j];
            return p;
        };

        if (iv.hi - iv.lo > kDedupTol) {
            Vec at_lo = point_at(iv.lo);
            Vec at_hi = point_at(iv.hi);
            if (screen_candidate(sys, at_lo, tol)) yield.points.push_back(std::move(at_lo));
            if (screen_candidate(sys, at_hi, tol)) yield.points.push_back(std::move(at_hi));
            yield.families.emplace_back(mask, FixedPointFamily{base, dir, iv.lo, iv.hi});
        } else {
            Vec p = point_at(0.5 * (iv.lo + iv.hi));
            if (screen_candidate(sys, p, tol)) yield.points.push_back(std::move(p));
        }
    }
    return yield;
}

void sort_dedup_points(std::vector<Vec>& points) {
    std::sort(points.begin(), points.end());
    std::vector<Vec> kept;
    for (auto& p : points) {
        bool dup = false;
        for (const auto& q : kept) {
            if (kernels::sup_diff(p.data(), q.data(), p.size()) <= kDedupTol) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(std::move(p));
    }
    points = std::move(kept);
}

}  // namespace

FixedPointSet brute_force_fixed_points(const FinancialSystem& sys, double tol) {
    const std::size_t n = sys.size();
    if (n > kBruteForceMaxNodes)
        throw SizeLimitError("brute-force enumeration supports at most " +
                             std::to_string(kBruteForceMaxNodes) + " nodes, got " +
                             std::to_string(n));

    const unsigned total = 1u << n;
    FixedPointSet out;
    std::vector<std::pair<unsigned, FixedPointFamily>> families;
    std::size_t singular = 0;

#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<Vec> local_points;
        std::vector<std::pair<unsigned, FixedPointFamily>> local_families;
        std::size_t local_singular = 0;
#pragma omp for schedule(dynamic, 8)
        for (unsigned mask = 0; mask < total; ++mask) {
            auto yield = evaluate_pattern(sys, mask, tol);
            for (auto& p : yield.points) local_points.push_back(std::move(p));
            for (auto& f : yield.families) local_families.push_back(std::move(f));
            if (yield.singular) ++local_singular;
        }
#pragma omp critical
        {
            for (auto& p : local_points) out.points.push_back(std::move(p));
            for (auto& f : local_families) families.push_back(std::move(f));
            singular += local_singular;
        }
    }
#else
    for (unsigned mask = 0; mask < total; ++mask) {
        auto yield = evaluate_pattern(sys, mask, tol);
        for (auto& p : yield.points) out.points.push_back(std::move(p));
        for (auto& f : yield.families) families.push_back(std::move(f));
        if (yield.singular) ++singular;
    }
#endif

    sort_dedup_points(out.points);
    out.singular_candidates = singular;
    if (!families.empty()) {
        std::stable_sort(families.begin(), families.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        out.continuum_detected = true;
        out.family = std::move(families.front().second);
    }
    out.is_singleton = out.points.size() == 1 && !out.continuum_detected;
    return out;
}

FixedPointSet grid_fixed_points(const FinancialSystem& sys, std::size_t grid_steps, double tol) {
    const std::size_t n = sys.size();
    if (n > kGridMaxNodes)
        throw SizeLimitError("grid scan supports at most " + std::to_string(kGridMaxNodes) +
                             " nodes, got " + std::to_string(n));
    if (grid_steps == 0 || grid_steps > kGridMaxSteps)
        throw SizeLimitError("grid_steps must be in [1, " + std::to_string(kGridMaxSteps) +
                             "], got " + std::to_string(grid_steps));

    const Vec& p_bar = sys.obligations();
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= grid_steps + 1;

    FixedPointSet out;

#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<Vec> local_points;
        Vec p(n), next(n);
#pragma omp for schedule(dynamic, 64)
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = p_bar[j] * (static_cast<double>(rem % (grid_steps + 1)) /
                                   static_cast<double>(grid_steps));
                rem /= grid_steps + 1;
            }
            for (std::size_t it = 0; it < kGridSettleIters; ++it) {
                kernels::clearing_step(sys, p.data(), next.data());
                const double delta = kernels::sup_diff(p.data(), next.data(), n);
                p.swap(next);
                if (delta <= tol * 1e-2) break;
            }
            Vec candidate = p;
            if (screen_candidate(sys, candidate, tol)) local_points.push_back(std::move(candidate));
        }
#pragma omp critical
        {
            for (auto& q : local_points) out.points.push_back(std::move(q));
        }
    }
#else
    Vec p(n), next(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t j = 0; j < n; ++j) {
            p[j] = p_bar[j] * (static_cast<double>(rem % (grid_steps + 1)) /
                               static_cast<double>(grid_steps));
            rem /= grid_steps + 1;
        }
        for (std::size_t it = 0; it < kGridSettleIters; ++it) {
            kernels::clearing_step(sys, p.data(), next.data());
            const double delta = kernels::sup_diff(p.data(), next.data(), n);
            p.swap(next);
            if (delta <= tol * 1e-2) break;
        }
        Vec candidate = p;
        if (screen_candidate(sys, candidate, tol)) out.points.push_back(std::move(candidate));
    }
#endif

    sort_dedup_points(out.points);
    out.continuum_detected = out.points.size() >= 3;
    out.is_singleton = out.points.size() == 1;
    return out;
}

}  // namespace netclear
