#include "tourney/condensation.hpp"

#include <algorithm>
#include <numeric>

namespace tourney {

namespace {

// Iterative Tarjan. Emits components in reverse topological order of the
// condensation; ids are then renumbered to the canonical min-member order.
struct TarjanState {
    const std::vector<Bitset>& adj;
    int n;
    std::vector<int> index, lowlink, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    std::vector<std::vector<int>> raw_components;
    int next_index = 0;

    explicit TarjanState(int n_, const std::vector<Bitset>& adj_)
        : adj(adj_), n(n_), index(static_cast<std::size_t>(n_), -1),
          lowlink(static_cast<std::size_t>(n_), 0), comp(static_cast<std::size_t>(n_), -1),
          on_stack(static_cast<std::size_t>(n_), false) {}

    void run(int root) {
        struct Frame {
            int v;
            std::vector<int> succ;
            std::size_t next = 0;
        };
        std::vector<Frame> frames;
        frames.push_back({root, adj[static_cast<std::size_t>(root)].to_vector()});
        index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;

        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto vu = static_cast<std::size_t>(f.v);
            if (f.next < f.succ.size()) {
                const int w = f.succ[f.next++];
                const auto wu = static_cast<std::size_t>(w);
                if (index[wu] < 0) {
                    index[wu] = lowlink[wu] = next_index++;
                    stack.push_back(w);
                    on_stack[wu] = true;
                    frames.push_back({w, adj[wu].to_vector()});
                } else if (on_stack[wu]) {
                    lowlink[vu] = std::min(lowlink[vu], index[wu]);
                }
                continue;
            }
            if (lowlink[vu] == index[vu]) {
                std::vector<int> members;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(raw_components.size());
                    members.push_back(w);
                } while (w != f.v);
                raw_components.push_back(std::move(members));
            }
            const int v = f.v;
            frames.pop_back();
            if (!frames.empty()) {
                const auto pu = static_cast<std::size_t>(frames.back().v);
                lowlink[pu] = std::min(lowlink[pu], lowlink[static_cast<std::size_t>(v)]);
            }
        }
    }
};

} // namespace

SccDecomposition scc_decompose_adj(int n, const std::vector<Bitset>& adj) {
    TarjanState t(n, adj);
    for (int v = 0; v < n; ++v)
        if (t.index[static_cast<std::size_t>(v)] < 0) t.run(v);

    const int nc = static_cast<int>(t.raw_components.size());
    for (auto& members : t.raw_components) std::sort(members.begin(), members.end());

    // Canonical ids by minimum member; remember where each raw (emission
    // ordered) component ended up.
    std::vector<int> order(static_cast<std::size_t>(nc));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return t.raw_components[static_cast<std::size_t>(a)].front() <
               t.raw_components[static_cast<std::size_t>(b)].front();
    });

    SccDecomposition out;
    out.components.resize(static_cast<std::size_t>(nc));
    out.member_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> canonical_of_raw(static_cast<std::size_t>(nc));
    for (int ci = 0; ci < nc; ++ci) {
        const int raw = order[static_cast<std::size_t>(ci)];
        canonical_of_raw[static_cast<std::size_t>(raw)] = ci;
        out.components[static_cast<std::size_t>(ci)] = std::move(t.raw_components[static_cast<std::size_t>(raw)]);
        for (int v : out.components[static_cast<std::size_t>(ci)])
            out.member_of[static_cast<std::size_t>(v)] = ci;
    }
    out.emission_order.reserve(static_cast<std::size_t>(nc));
    for (int raw = 0; raw < nc; ++raw)
        out.emission_order.push_back(canonical_of_raw[static_cast<std::size_t>(raw)]);
    return out;
}

SccDecomposition scc_decompose(const RevealedGraph& g) {
    std::vector<Bitset> adj(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) adj[static_cast<std::size_t>(v)] = g.out_row(v);
    return scc_decompose_adj(g.size(), adj);
}

CondensationGraph condense(const RevealedGraph& g) {
    CondensationGraph c;
    c.scc = scc_decompose(g);
    const int nc = c.scc.count();
    c.comp_adj.assign(static_cast<std::size_t>(nc), Bitset(static_cast<std::size_t>(nc)));
    for (int u = 0; u < g.size(); ++u) {
        const int cu = c.scc.member_of[static_cast<std::size_t>(u)];
        g.out_row(u).for_each([&](std::size_t v) {
            const int cv = c.scc.member_of[v];
            if (cv != cu) c.comp_adj[static_cast<std::size_t>(cu)].set(static_cast<std::size_t>(cv));
        });
    }

    // Component-level reachability, computed on the condensation itself
    // (n' <= n) rather than lifted from vertex bitsets.
    std::vector<Bitset> radj(static_cast<std::size_t>(nc), Bitset(static_cast<std::size_t>(nc)));
    for (int a = 0; a < nc; ++a)
        c.comp_adj[static_cast<std::size_t>(a)].for_each(
            [&](std::size_t b) { radj[b].set(static_cast<std::size_t>(a)); });

    const SccDecomposition fine = scc_decompose_adj(nc, c.comp_adj); // singletons; gives topo order
    c.comp_out_reach.assign(static_cast<std::size_t>(nc), Bitset(static_cast<std::size_t>(nc)));
    c.comp_in_reach.assign(static_cast<std::size_t>(nc), Bitset(static_cast<std::size_t>(nc)));
    for (int ci : fine.emission_order) {
        const int a = fine.components[static_cast<std::size_t>(ci)].front();
        Bitset& r = c.comp_out_reach[static_cast<std::size_t>(a)];
        c.comp_adj[static_cast<std::size_t>(a)].for_each([&](std::size_t b) {
            r.set(b);
            r |= c.comp_out_reach[b];
        });
    }
    for (int a = 0; a < nc; ++a)
        c.comp_out_reach[static_cast<std::size_t>(a)].for_each(
            [&](std::size_t b) { c.comp_in_reach[b].set(static_cast<std::size_t>(a)); });

    c.in_count.resize(static_cast<std::size_t>(nc));
    c.out_count.resize(static_cast<std::size_t>(nc));
    c.kappa.resize(static_cast<std::size_t>(nc));
    for (int a = 0; a < nc; ++a) {
        const auto au = static_cast<std::size_t>(a);
        c.in_count[au] = static_cast<int>(c.comp_in_reach[au].count());
        c.out_count[au] = static_cast<int>(c.comp_out_reach[au].count());
        c.kappa[au] = static_cast<int>(c.comp_in_reach[au].union_count(c.comp_out_reach[au]));
    }
    return c;
}

bool refines(const SccDecomposition& fine, const RevealedGraph& coarse_graph) {
    if (static_cast<int>(fine.member_of.size()) != coarse_graph.size())
        raise(Errc::invalid_input, "vertex universes differ");
    const SccDecomposition coarse = scc_decompose(coarse_graph);
    for (const auto& comp : fine.components) {
        const int target = coarse.member_of[static_cast<std::size_t>(comp.front())];
        for (int v : comp)
            if (coarse.member_of[static_cast<std::size_t>(v)] != target) return false;
    }
    return true;
}

bool kappa_lift_check(const RevealedGraph& g) {
    const ReachSummary rs = reach_summary(g);
    const CondensationGraph c = condense(g);
    const int n = g.size();
    const int nc = c.count();
    for (int ci = 0; ci < nc; ++ci) {
        const bool comp_resolved = c.kappa[static_cast<std::size_t>(ci)] == nc - 1;
        bool all = true, some = false;
        for (int v : c.scc.components[static_cast<std::size_t>(ci)]) {
            const bool r = rs.kappa[static_cast<std::size_t>(v)] == n - 1;
            all = all && r;
            some = some || r;
        }
        if (comp_resolved != all || comp_resolved != some) return false;
    }
    return true;
}

TieredRanking tiered_ranking(const RevealedGraph& g, const std::vector<double>* secondary_key) {
    const CondensationGraph c = condense(g);
    const int nc = c.count();
    std::vector<int> order(static_cast<std::size_t>(nc));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int ia = c.in_count[static_cast<std::size_t>(a)];
        const int ib = c.in_count[static_cast<std::size_t>(b)];
        if (ia != ib) return ia < ib;
        return c.scc.min_member(a) < c.scc.min_member(b);
    });

    TieredRanking t;
    t.tier_of.assign(static_cast<std::size_t>(g.size()), -1);
    t.tiers.reserve(static_cast<std::size_t>(nc));
    for (int ci : order) {
        std::vector<int> members = c.scc.components[static_cast<std::size_t>(ci)];
        if (secondary_key) {
            std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
                const double sa = (*secondary_key)[static_cast<std::size_t>(a)];
                const double sb = (*secondary_key)[static_cast<std::size_t>(b)];
                if (sa != sb) return sa > sb;
                return a < b;
            });
        }
        for (int v : members) t.tier_of[static_cast<std::size_t>(v)] = t.tier_count();
        t.tiers.push_back(std::move(members));
    }
    return t;
}

} // namespace tourney
