#pragma once

#include <optional>
#include <vector>

#include "tourney/graph.hpp"

namespace tourney {

/// Partition of the vertex set into maximal strongly connected components.
/// Component ids are canonical: sorted by minimum member id, members sorted
/// ascending, so traces and tie-breaks are reproducible.
struct SccDecomposition {
    std::vector<std::vector<int>> components;
    std::vector<int> member_of;
    /// Component ids in Tarjan emission order (reverse topological); kept for
    /// closure computations that need a topological sweep.
    std::vector<int> emission_order;

    int count() const { return static_cast<int>(components.size()); }
    int min_member(int c) const { return components[static_cast<std::size_t>(c)].front(); }
};

SccDecomposition scc_decompose(const RevealedGraph& g);
SccDecomposition scc_decompose_adj(int n, const std::vector<Bitset>& adj);

/// The DAG over components, with component-level reachability counts
/// (in_count/out_count/kappa count components, not vertices).
struct CondensationGraph {
    SccDecomposition scc;
    std::vector<Bitset> comp_adj;
    std::vector<Bitset> comp_in_reach;
    std::vector<Bitset> comp_out_reach;
    std::vector<int> in_count;
    std::vector<int> out_count;
    std::vector<int> kappa;

    int count() const { return scc.count(); }
    bool has_edge(int c, int d) const {
        return comp_adj[static_cast<std::size_t>(c)].test(static_cast<std::size_t>(d));
    }
};

CondensationGraph condense(const RevealedGraph& g);

/// True iff every component of `fine` is contained in one component of
/// `coarse_graph`'s decomposition (the projection map is well-defined).
bool refines(const SccDecomposition& fine, const RevealedGraph& coarse_graph);

/// Diagnostic: component-level resolution must agree with vertex-level
/// resolution, i.e. kappa_cond(C) = n'-1 iff all members have kappa = n-1
/// iff some member does.
bool kappa_lift_check(const RevealedGraph& g);

/// SCC tiers ordered best to worst; vertices inside a tier are tied and are
/// listed by descending secondary key when one is supplied, else by id.
struct TieredRanking {
    std::vector<std::vector<int>> tiers;
    std::vector<int> tier_of; // vertex -> tier index

    int tier_count() const { return static_cast<int>(tiers.size()); }
};

TieredRanking tiered_ranking(const RevealedGraph& g,
                             const std::vector<double>* secondary_key = nullptr);

} // namespace tourney
