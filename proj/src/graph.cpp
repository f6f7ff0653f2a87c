#include "netclear/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netclear {

namespace {

std::vector<std::vector<std::size_t>> successors(const FinancialSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = sys.share_row(i);
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] > 0.0) adj[i].push_back(j);
    }
    return adj;
}

std::vector<std::vector<std::size_t>> predecessors(const FinancialSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = sys.share_row(i);
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] > 0.0) adj[j].push_back(i);
    }
    return adj;
}

// Multi-source BFS; returns the set of nodes reachable from `sources`
// (sources included) as a 0/1 mask.
std::vector<char> closure(const std::vector<std::vector<std::size_t>>& adj,
                          const std::vector<std::size_t>& sources) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> frontier;
    for (std::size_t s : sources) {
        if (!seen[s]) {
            seen[s] = 1;
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        const std::size_t v = frontier.back();
        frontier.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                frontier.push_back(w);
            }
        }
    }
    return seen;
}

NodeSet mask_to_set(const std::vector<char>& mask) {
    NodeSet out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> cash_nodes(const FinancialSystem& sys) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (sys.cash()[i] > 0.0) out.push_back(i);
    return out;
}

}  // namespace

Reachability::Reachability(const FinancialSystem& sys) : n_(sys.size()), m_(n_ * n_, 0) {
    const auto adj = successors(sys);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < n_; ++i) {
        const auto seen = closure(adj, {i});
        std::copy(seen.begin(), seen.end(), m_.begin() + i * n_);
    }
}

NodeSet risk_orbit(const FinancialSystem& sys, std::size_t node) {
    if (node >= sys.size())
        throw std::out_of_range("node " + std::to_string(node) + " out of range");
    return mask_to_set(closure(successors(sys), {node}));
}

RegularityReport is_regular(const FinancialSystem& sys) {
    // A node's orbit contains cash iff the node can be reached from a cash
    // holder along reversed edges.
    const auto can_reach_cash = closure(predecessors(sys), cash_nodes(sys));
    RegularityReport report;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (!can_reach_cash[i]) {
            report.regular = false;
            report.witness = i;
            break;
        }
    }
    return report;
}

NodeSet cash_accessible_set(const FinancialSystem& sys) {
    return mask_to_set(closure(successors(sys), cash_nodes(sys)));
}

NodePartition partition_nodes(const FinancialSystem& sys) {
    const auto funded_mask = closure(successors(sys), cash_nodes(sys));
    const auto reaches_funded = closure(predecessors(sys), mask_to_set(funded_mask));

    NodePartition part;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (funded_mask[i])
            part.funded.push_back(i);
        else if (reaches_funded[i])
            part.upstream.push_back(i);
        else
            part.stranded.push_back(i);
    }
    return part;
}

bool is_absorbing(const FinancialSystem& sys, const NodeSet& s) {
    std::vector<char> in_s(sys.size(), 0);
    for (std::size_t i : s) in_s.at(i) = 1;
    for (std::size_t i : s) {
        const double* row = sys.share_row(i);
        for (std::size_t j = 0; j < sys.size(); ++j)
            if (row[j] > 0.0 && !in_s[j]) return false;
    }
    return true;
}

RestrictedSystem restrict_system(const FinancialSystem& sys, const NodeSet& nodes) {
    if (nodes.empty()) throw EmptySetError("cannot restrict to an empty node set");

    NodeSet sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i : sorted) {
        if (i >= sys.size())
            throw std::out_of_range("node " + std::to_string(i) + " out of range");
    }

    const std::size_t m = sorted.size();
    RawSystem raw;
    raw.n = m;
    raw.pi.resize(m);
    raw.p_bar.resize(m);
    raw.e.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t i = sorted[a];
        raw.pi[a].resize(m);
        double sum = 0.0;
        for (std::size_t b = 0; b < m; ++b) {
            raw.pi[a][b] = sys.share(i, sorted[b]);
            sum += raw.pi[a][b];
        }
        if (std::abs(sum - 1.0) > kRowSumTol) throw NotAbsorbingError(i + 1, sum);
        raw.p_bar[a] = sys.obligations()[i];
        raw.e[a] = sys.cash()[i];
    }
    return RestrictedSystem{validate_system(raw), std::move(sorted)};
}

}  // namespace netclear
