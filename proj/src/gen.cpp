#include "netclear/gen.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace netclear {

Family family_from_name(std::string_view name) {
    if (name == "random_dense") return Family::random_dense;
    if (name == "random_sparse") return Family::random_sparse;
    if (name == "non_regular") return Family::non_regular;
    if (name == "cashless") return Family::cashless;
    if (name == "pan_mixed") return Family::pan_mixed;
    throw InfeasibleSpecError("unknown family: " + std::string(name));
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::random_dense: return "random_dense";
        case Family::random_sparse: return "random_sparse";
        case Family::non_regular: return "non_regular";
        case Family::cashless: return "cashless";
        case Family::pan_mixed: return "pan_mixed";
    }
    return "unknown";
}

namespace {

constexpr double kShareLo = 0.1;   // raw share weight before row normalization
constexpr double kShareHi = 1.0;
constexpr double kValueLo = 0.5;   // obligations and cash
constexpr double kValueHi = 2.0;

double default_density(Family f) { return f == Family::random_sparse ? 0.3 : 1.0; }

// Fisher-Yates prefix: the first `count` entries of a random permutation.
std::vector<std::size_t> pick_distinct(SplitMix64& rng, std::size_t n, std::size_t count) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
        const std::size_t j = i + rng.next_index(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(std::min(count, n));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::size_t> permutation(SplitMix64& rng, std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j = i + rng.next_index(n - i);
        std::swap(idx[i], idx[j]);
    }
    return idx;
}

// Fills row i of `pi` with a random row supported on `targets`, at least
// one entry positive, normalized to unit sum.
void random_row(SplitMix64& rng, std::vector<Vec>& pi, std::size_t i,
                const std::vector<std::size_t>& targets, double density) {
    Vec& row = pi[i];
    bool any = false;
    for (std::size_t t : targets) {
        if (rng.next_unit() < density) {
            row[t] = rng.next_in(kShareLo, kShareHi);
            any = true;
        }
    }
    if (!any) row[targets[rng.next_index(targets.size())]] = rng.next_in(kShareLo, kShareHi);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
}

// A ring over `members` plus random extra edges inside the set, so the set
// is strongly connected from any of its nodes.
void ring_rows(SplitMix64& rng, std::vector<Vec>& pi, const std::vector<std::size_t>& members,
               double density) {
    const std::size_t k = members.size();
    for (std::size_t a = 0; a < k; ++a) {
        Vec& row = pi[members[a]];
        row[members[(a + 1) % k]] = rng.next_in(kShareLo, kShareHi);
        for (std::size_t b = 0; b < k; ++b)
            if (b != (a + 1) % k && rng.next_unit() < density * 0.5)
                row[members[b]] += rng.next_in(kShareLo, kShareHi);
        double sum = 0.0;
        for (std::size_t b = 0; b < k; ++b) sum += row[members[b]];
        for (std::size_t b = 0; b < k; ++b) row[members[b]] /= sum;
    }
}

std::size_t cash_count(double fraction, std::size_t n) {
    const double c = fraction * static_cast<double>(n);
    auto count = static_cast<std::size_t>(c);
    if (static_cast<double>(count) < c) ++count;  // ceil
    return std::min(count, n);
}

}  // namespace

FinancialSystem generate(const GenSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0) throw InfeasibleSpecError("need at least one node");

    const double density = spec.density.value_or(default_density(spec.family));
    if (!(density > 0.0) || density > 1.0)
        throw InfeasibleSpecError("density must be in (0, 1]");
    const double cash_fraction = spec.cash_fraction.value_or(0.5);
    if (cash_fraction < 0.0 || cash_fraction > 1.0)
        throw InfeasibleSpecError("cash_fraction must be in [0, 1]");
    if (spec.family == Family::pan_mixed && n < 3)
        throw InfeasibleSpecError("pan_mixed needs at least 3 nodes");

    SplitMix64 rng{spec.seed};
    // Families draw in a fixed order; any change here breaks instance
    // reproducibility and needs a compatibility note.
    RawSystem raw;
    raw.n = n;
    raw.pi.assign(n, Vec(n, 0.0));
    raw.p_bar.assign(n, 0.0);
    raw.e.assign(n, 0.0);

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);

    switch (spec.family) {
        case Family::random_dense:
        case Family::random_sparse: {
            for (std::size_t i = 0; i < n; ++i) random_row(rng, raw.pi, i, all, density);
            for (std::size_t i : pick_distinct(rng, n, cash_count(cash_fraction, n)))
                raw.e[i] = rng.next_in(kValueLo, kValueHi);
            break;
        }
        case Family::cashless: {
            for (std::size_t i = 0; i < n; ++i) random_row(rng, raw.pi, i, all, density);
            break;
        }
        case Family::non_regular: {
            // A cashless cycle that only pays into itself: the orbit of any
            // of its nodes holds no cash, whatever the rest looks like.
            const std::size_t trap_size = std::max<std::size_t>(1, n / 3);
            const auto trap = pick_distinct(rng, n, trap_size);
            std::vector<char> in_trap(n, 0);
            for (std::size_t t : trap) in_trap[t] = 1;
            ring_rows(rng, raw.pi, trap, density);

            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < n; ++i)
                if (!in_trap[i]) rest.push_back(i);
            for (std::size_t i : rest) random_row(rng, raw.pi, i, all, density);
            if (!rest.empty()) {
                const std::size_t want = std::max<std::size_t>(
                    1, cash_count(cash_fraction, rest.size()));
                const auto picks = pick_distinct(rng, rest.size(), want);
                for (std::size_t k : picks) raw.e[rest[k]] = rng.next_in(kValueLo, kValueHi);
            }
            break;
        }
        case Family::pan_mixed: {
            // Three regions: a cash-fed block that keeps payments inside
            // itself, a cashless feeder block that pays into it, and a
            // cashless cycle that pays only into itself.
            const auto perm = permutation(rng, n);
            const std::size_t n_funded = std::max<std::size_t>(1, n / 3);
            const std::size_t n_feeder = std::max<std::size_t>(1, (n - n_funded) / 2);
            std::vector<std::size_t> funded(perm.begin(), perm.begin() + n_funded);
            std::vector<std::size_t> feeder(perm.begin() + n_funded,
                                            perm.begin() + n_funded + n_feeder);
            std::vector<std::size_t> cycle(perm.begin() + n_funded + n_feeder, perm.end());

            ring_rows(rng, raw.pi, funded, density);
            ring_rows(rng, raw.pi, cycle, density);
            for (std::size_t i : feeder) {
                // Guaranteed edge into the funded block keeps it reachable.
                Vec& row = raw.pi[i];
                row[funded[rng.next_index(funded.size())]] = rng.next_in(kShareLo, kShareHi);
                for (std::size_t t : feeder)
                    if (t != i && rng.next_unit() < density * 0.5)
                        row[t] += rng.next_in(kShareLo, kShareHi);
                const double sum = std::accumulate(row.begin(), row.end(), 0.0);
                for (double& v : row) v /= sum;
            }

            const std::size_t want = std::max<std::size_t>(
                1, cash_count(cash_fraction, funded.size()));
            for (std::size_t k : pick_distinct(rng, funded.size(), want))
                raw.e[funded[k]] = rng.next_in(kValueLo, kValueHi);
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) raw.p_bar[i] = rng.next_in(kValueLo, kValueHi);
    return validate_system(raw);
}

}  // namespace netclear
