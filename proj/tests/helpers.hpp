#pragma once

// Test-side reference implementations, deliberately independent of the
// library's bitset/SCC machinery: plain bool-matrix closure, so the two
// paths can check each other.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tourney/graph.hpp"
#include "tourney/rng.hpp"

namespace brute {

using tourney::Edge;

struct Reach {
    int n = 0;
    std::vector<std::vector<bool>> can; // can[u][v]: u reaches v via >=1 edge
};

inline Reach closure(int n, const std::vector<Edge>& edges) {
    Reach r;
    r.n = n;
    r.can.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (const auto& [w, l] : edges) r.can[static_cast<std::size_t>(w)][static_cast<std::size_t>(l)] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!r.can[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) continue;
            for (int j = 0; j < n; ++j)
                if (r.can[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    r.can[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
    return r;
}

inline std::set<int> in_reach(const Reach& r, int v) {
    std::set<int> s;
    for (int u = 0; u < r.n; ++u)
        if (u != v && r.can[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) s.insert(u);
    return s;
}

inline std::set<int> out_reach(const Reach& r, int v) {
    std::set<int> s;
    for (int u = 0; u < r.n; ++u)
        if (u != v && r.can[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) s.insert(u);
    return s;
}

inline int kappa(const Reach& r, int v) {
    std::set<int> s = in_reach(r, v);
    const std::set<int> o = out_reach(r, v);
    s.insert(o.begin(), o.end());
    return static_cast<int>(s.size());
}

inline std::vector<int> in_counts(const Reach& r) {
    std::vector<int> out(static_cast<std::size_t>(r.n));
    for (int v = 0; v < r.n; ++v) out[static_cast<std::size_t>(v)] = static_cast<int>(in_reach(r, v).size());
    return out;
}

/// Components of mutual reachability, as sets.
inline std::vector<std::set<int>> sccs(const Reach& r) {
    std::vector<bool> done(static_cast<std::size_t>(r.n), false);
    std::vector<std::set<int>> comps;
    for (int v = 0; v < r.n; ++v) {
        if (done[static_cast<std::size_t>(v)]) continue;
        std::set<int> c{v};
        for (int u = v + 1; u < r.n; ++u)
            if (r.can[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] &&
                r.can[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
                c.insert(u);
        for (int u : c) done[static_cast<std::size_t>(u)] = true;
        comps.push_back(std::move(c));
    }
    return comps;
}

inline std::vector<Edge> tournament_edges(const tourney::Tournament& t) {
    std::vector<Edge> edges;
    for (int u = 0; u < t.size(); ++u)
        for (int v = 0; v < t.size(); ++v)
            if (u != v && t.beats(u, v)) edges.emplace_back(u, v);
    return edges;
}

/// Conditions (1) internal ordering and (2) rank dominance of the selection
/// problem, judged against the ground truth's reachability.
inline bool problem1_valid(const tourney::Tournament& truth, const std::vector<int>& top, int m,
                           std::string* why = nullptr) {
    const Reach r = closure(truth.size(), tournament_edges(truth));
    const std::vector<int> ic = in_counts(r);
    if (static_cast<int>(top.size()) != m) {
        if (why) *why = "wrong output length";
        return false;
    }
    std::set<int> sel(top.begin(), top.end());
    if (static_cast<int>(sel.size()) != m) {
        if (why) *why = "duplicate vertices in output";
        return false;
    }
    for (std::size_t i = 0; i + 1 < top.size(); ++i)
        if (ic[static_cast<std::size_t>(top[i])] > ic[static_cast<std::size_t>(top[i + 1])]) {
            if (why) *why = "internal ordering violated";
            return false;
        }
    int top_max = 0;
    int other_min = truth.size();
    for (int v = 0; v < truth.size(); ++v) {
        if (sel.count(v))
            top_max = std::max(top_max, ic[static_cast<std::size_t>(v)]);
        else
            other_min = std::min(other_min, ic[static_cast<std::size_t>(v)]);
    }
    if (m < truth.size() && top_max > other_min) {
        if (why) *why = "rank dominance violated";
        return false;
    }
    return true;
}

/// Tournament on n vertices from a bitmask over pairs (i<j), bit set meaning
/// i beats j; mask space 2^(n(n-1)/2) enumerates every orientation.
inline tourney::Tournament tournament_from_mask(int n, std::uint64_t mask) {
    std::vector<Edge> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            edges.emplace_back((mask >> bit) & 1 ? i : j, (mask >> bit) & 1 ? j : i);
    return tourney::Tournament::from_edges(n, edges);
}

inline tourney::Tournament random_tournament(int n, tourney::SplitMix64& rng) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.next() & 1)
                edges.emplace_back(i, j);
            else
                edges.emplace_back(j, i);
        }
    return tourney::Tournament::from_edges(n, edges);
}

/// Random subset of a random transitive tournament's edges: a random DAG of
/// the kind the revealed graphs of transitive runs are.
inline std::vector<Edge> random_dag_edges(int n, tourney::SplitMix64& rng, int keep_percent = 40) {
    const std::vector<int> perm = tourney::random_permutation(n, rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (static_cast<int>(rng.next_below(100)) < keep_percent)
                edges.emplace_back(perm[i], perm[j]);
    return edges;
}

inline std::vector<Edge> random_digraph_edges(int n, tourney::SplitMix64& rng,
                                              int keep_percent = 30) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && static_cast<int>(rng.next_below(100)) < keep_percent) {
                // keep at most one direction per pair so revealed-graph
                // invariants hold
                bool reversed = false;
                for (const auto& [w, l] : edges)
                    if (w == v && l == u) reversed = true;
                if (!reversed) edges.emplace_back(u, v);
            }
    return edges;
}

/// Tournament with planted tiers: tiers[i] lists member count, members of
/// earlier tiers beat later tiers, tiers of size >= 3 are internal cycles.
inline tourney::Tournament planted_tiers(const std::vector<int>& tier_sizes) {
    std::vector<Edge> edges;
    std::vector<std::vector<int>> tiers;
    int next = 0;
    for (int s : tier_sizes) {
        std::vector<int> t;
        for (int i = 0; i < s; ++i) t.push_back(next++);
        tiers.push_back(t);
    }
    const int n = next;
    for (std::size_t a = 0; a < tiers.size(); ++a)
        for (std::size_t b = a + 1; b < tiers.size(); ++b)
            for (int u : tiers[a])
                for (int v : tiers[b]) edges.emplace_back(u, v);
    for (const auto& t : tiers) {
        const int s = static_cast<int>(t.size());
        if (s == 1) continue;
        // ring plus forward chords: i -> i+1 around, i -> i+j for j >= 2
        // except the closing back-edges; strongly connected for s >= 3
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) {
                if (i == 0 && j == s - 1)
                    edges.emplace_back(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(i)]);
                else
                    edges.emplace_back(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
            }
    }
    return tourney::Tournament::from_edges(n, edges);
}

} // namespace brute
