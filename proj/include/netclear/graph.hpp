#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netclear/model.hpp"

namespace netclear {

/// Node sets are kept sorted ascending, 0-based.  Reports convert to
/// 1-based labels on output.
using NodeSet = std::vector<std::size_t>;

/// Dense reachability over the liability graph.  An edge i -> j exists iff
/// share(i, j) > 0 exactly; reach(i, j) is true iff j == i or a directed
/// path leads from i to j.  Built by breadth-first search from every node.
class Reachability {
public:
    explicit Reachability(const FinancialSystem& sys);

    bool reach(std::size_t from, std::size_t to) const { return m_[from * n_ + to] != 0; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<char> m_;
};

/// All nodes reachable from `node`, including itself.
NodeSet risk_orbit(const FinancialSystem& sys, std::size_t node);

struct RegularityReport {
    bool regular = true;
    std::optional<std::size_t> witness;  // smallest node that cannot reach any cash
};

/// A system is regular when every node can reach some node holding positive
/// cash.  The solver does not need regularity; this exists for analysis.
RegularityReport is_regular(const FinancialSystem& sys);

/// Nodes reachable from some node with positive cash (cash holders included).
NodeSet cash_accessible_set(const FinancialSystem& sys);

/// Disjoint classification of the nodes:
///   funded   -- reachable from a cash-holding node; these end up paying > 0,
///   upstream -- cashless nodes that can reach the funded region; they pay 0,
///   stranded -- cashless nodes with no route to the funded region; they pay 0
///               by convention.
/// funded and stranded are absorbing, which is what lets the solver treat
/// the funded block as a standalone system.
struct NodePartition {
    NodeSet funded;
    NodeSet upstream;
    NodeSet stranded;
};

NodePartition partition_nodes(const FinancialSystem& sys);

/// True iff no node outside `s` is reachable from `s`.  A path leaving `s`
/// must take a first edge out of it, so checking direct edges suffices.
bool is_absorbing(const FinancialSystem& sys, const NodeSet& s);

struct RestrictedSystem {
    FinancialSystem system;
    NodeSet to_parent;  // subsystem index -> parent node index
};

/// Restriction to an absorbing node set.  Rows of an absorbing set keep
/// their full mass inside the set, so the sub-matrix rows still sum to 1;
/// anything else throws NotAbsorbingError.
RestrictedSystem restrict_system(const FinancialSystem& sys, const NodeSet& nodes);

}  // namespace netclear
