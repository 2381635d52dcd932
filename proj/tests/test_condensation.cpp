#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "tourney/condensation.hpp"

using namespace tourney;

namespace {

RevealedGraph graph_from(int n, const std::vector<Edge>& edges) {
    RevealedGraph g(n);
    g.add_edges(edges);
    return g;
}

// a > {b,c,d cycle} > e > f, 0-based
const std::vector<Edge> kFig3Bottom = {{1, 2}, {2, 3}, {3, 1}, {0, 1}, {3, 4}, {4, 5}};

std::vector<std::set<int>> comp_sets(const SccDecomposition& scc) {
    std::vector<std::set<int>> out;
    for (const auto& c : scc.components) out.emplace_back(c.begin(), c.end());
    return out;
}

} // namespace

TEST_CASE("scc decomposition fixtures") {
    const SccDecomposition scc = scc_decompose(graph_from(6, kFig3Bottom));
    CHECK(comp_sets(scc) == std::vector<std::set<int>>{{0}, {1, 2, 3}, {4}, {5}});
    CHECK(scc.member_of[2] == 1);

    const SccDecomposition empty = scc_decompose(new_revealed(5));
    CHECK(empty.count() == 5);
    for (int c = 0; c < 5; ++c) CHECK(empty.components[static_cast<std::size_t>(c)] == std::vector<int>{c});
}

TEST_CASE("condensation of every 5-vertex tournament is a transitive tournament") {
    for (std::uint64_t mask = 0; mask < 1024; ++mask) {
        const Tournament t = brute::tournament_from_mask(5, mask);
        const CondensationGraph c = condense(full_reveal(t));
        const int nc = c.count();
        // complete and acyclic over components: exactly one direction per pair
        for (int a = 0; a < nc; ++a)
            for (int b = a + 1; b < nc; ++b)
                CHECK((c.has_edge(a, b) != c.has_edge(b, a)));
        // in-reach counts over components are 0..nc-1 (a total tier order)
        std::vector<int> counts = c.in_count;
        std::sort(counts.begin(), counts.end());
        for (int i = 0; i < nc; ++i) CHECK(counts[static_cast<std::size_t>(i)] == i);

        // vertex in-reach equals cumulative tier mass minus one
        const ReachSummary rs = reach_summary(full_reveal(t));
        std::vector<int> tier_order(static_cast<std::size_t>(nc));
        std::iota(tier_order.begin(), tier_order.end(), 0);
        std::sort(tier_order.begin(), tier_order.end(),
                  [&](int a, int b) { return c.in_count[static_cast<std::size_t>(a)] < c.in_count[static_cast<std::size_t>(b)]; });
        int cumulative = 0;
        for (int ci : tier_order) {
            cumulative += static_cast<int>(c.scc.components[static_cast<std::size_t>(ci)].size());
            for (int v : c.scc.components[static_cast<std::size_t>(ci)])
                CHECK(rs.in_count[static_cast<std::size_t>(v)] == cumulative - 1);
        }
    }
}

TEST_CASE("condense fixtures") {
    // single cycle: one component, no edges
    const CondensationGraph ring = condense(graph_from(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    CHECK(ring.count() == 1);
    CHECK(ring.comp_adj[0].none());

    const CondensationGraph fig3 = condense(graph_from(6, kFig3Bottom));
    REQUIRE(fig3.count() == 4);
    CHECK(comp_sets(fig3.scc) == std::vector<std::set<int>>{{0}, {1, 2, 3}, {4}, {5}});
    CHECK(fig3.in_count == std::vector<int>{0, 1, 2, 3});

    // a DAG input condenses to itself
    const RevealedGraph dag = graph_from(4, {{0, 1}, {0, 2}, {1, 3}});
    const CondensationGraph cd = condense(dag);
    CHECK(cd.count() == 4);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) CHECK(cd.has_edge(u, v) == dag.has_edge(u, v));
}

TEST_CASE("condensation is acyclic on random digraphs") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(24));
        const CondensationGraph c = condense(graph_from(n, brute::random_digraph_edges(n, rng, 45)));
        // acyclic iff every component-level kappa equals in+out (no overlap)
        for (int a = 0; a < c.count(); ++a) {
            CHECK(!c.comp_in_reach[static_cast<std::size_t>(a)].intersects(
                c.comp_out_reach[static_cast<std::size_t>(a)]));
            CHECK(!c.comp_adj[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(a)));
        }
    }
}

TEST_CASE("reachability lifts between graph and condensation") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(16));
        const RevealedGraph g = graph_from(n, brute::random_digraph_edges(n, rng, 40));
        const ReachSummary rs = reach_summary(g);
        const CondensationGraph c = condense(g);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                const int cu = c.scc.member_of[static_cast<std::size_t>(u)];
                const int cv = c.scc.member_of[static_cast<std::size_t>(v)];
                const bool graph_reach = rs.out_reach[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
                const bool cond_reach =
                    cu == cv ||
                    c.comp_out_reach[static_cast<std::size_t>(cu)].test(static_cast<std::size_t>(cv));
                CHECK(graph_reach == cond_reach);
            }
    }
}

TEST_CASE("equal in-reach within components") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(16));
        const RevealedGraph g = graph_from(n, brute::random_digraph_edges(n, rng, 50));
        const ReachSummary rs = reach_summary(g);
        for (const auto& comp : scc_decompose(g).components)
            for (int v : comp)
                CHECK(rs.in_count[static_cast<std::size_t>(v)] ==
                      rs.in_count[static_cast<std::size_t>(comp.front())]);
    }
}

TEST_CASE("refines: fixtures and randomized subgraphs") {
    const RevealedGraph coarse = graph_from(4, {{1, 2}, {2, 3}, {3, 1}});
    const SccDecomposition fine = scc_decompose(graph_from(4, {{1, 2}}));
    CHECK(refines(fine, coarse));
    CHECK(refines(scc_decompose(coarse), coarse));
    CHECK_THROWS_WITH_AS(refines(scc_decompose(new_revealed(3)), coarse),
                         doctest::Contains("InvalidInput"), Error);

    // a genuinely non-refining decomposition: {0,1,2} merged in "fine" while
    // the coarse graph keeps them all separate
    const SccDecomposition merged = scc_decompose(graph_from(4, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(!refines(merged, graph_from(4, {{0, 1}})));

    SplitMix64 rng(34);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(11));
        const Tournament t = brute::random_tournament(n, rng);
        RevealedGraph sub(n);
        std::vector<Edge> kept;
        for (const auto& e : brute::tournament_edges(t))
            if (rng.next() & 1) kept.push_back(e);
        sub.add_edges(kept);
        CHECK(refines(scc_decompose(sub), full_reveal(t)));
    }
}

TEST_CASE("kappa lift: fixtures and random graphs") {
    CHECK(kappa_lift_check(new_revealed(4)));
    CHECK(kappa_lift_check(graph_from(3, {{0, 1}, {1, 2}, {2, 0}})));
    SplitMix64 rng(35);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(14));
        CHECK(kappa_lift_check(graph_from(n, brute::random_digraph_edges(n, rng, 40))));
    }
}

TEST_CASE("path preservation under projection") {
    SplitMix64 rng(36);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(12));
        const std::vector<Edge> all = brute::random_digraph_edges(n, rng, 50);
        std::vector<Edge> sub;
        for (const auto& e : all)
            if (rng.next() & 1) sub.push_back(e);
        const RevealedGraph g = graph_from(n, all);
        const RevealedGraph gs = graph_from(n, sub);
        const CondensationGraph cg = condense(g);
        const CondensationGraph cs = condense(gs);
        // D ~> C in the subgraph's condensation implies equal projections or
        // a path between the projections in the supergraph's condensation
        for (int a = 0; a < cs.count(); ++a)
            cs.comp_out_reach[static_cast<std::size_t>(a)].for_each([&](std::size_t b) {
                const int pa = cg.scc.member_of[static_cast<std::size_t>(cs.scc.min_member(a))];
                const int pb =
                    cg.scc.member_of[static_cast<std::size_t>(cs.scc.min_member(static_cast<int>(b)))];
                const bool ok =
                    pa == pb ||
                    cg.comp_out_reach[static_cast<std::size_t>(pa)].test(static_cast<std::size_t>(pb));
                CHECK(ok);
            });
    }
}

TEST_CASE("tiered ranking fixtures") {
    const TieredRanking fig3 = tiered_ranking(graph_from(6, kFig3Bottom));
    CHECK(fig3.tiers == std::vector<std::vector<int>>{{0}, {1, 2, 3}, {4}, {5}});
    CHECK(fig3.tier_of == std::vector<int>{0, 1, 1, 1, 2, 3});

    // full transitive tournament: singleton tiers in true order
    const Tournament t = Tournament::from_permutation(std::vector<int>{2, 0, 3, 1});
    const TieredRanking tt = tiered_ranking(full_reveal(t));
    CHECK(tt.tiers == std::vector<std::vector<int>>{{2}, {0}, {3}, {1}});

    // secondary scores order the tied tier descending: b:0.2 c:0.9 d:0.5
    const std::vector<double> scores = {0.0, 0.2, 0.9, 0.5, 0.0, 0.0};
    const TieredRanking scored = tiered_ranking(graph_from(6, kFig3Bottom), &scores);
    CHECK(scored.tiers[1] == std::vector<int>{2, 3, 1});
}
