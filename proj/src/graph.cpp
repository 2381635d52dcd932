#include "tourney/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tourney/condensation.hpp"

namespace tourney {

Tournament Tournament::from_edges(int n, std::span<const Edge> edges) {
    if (n < 1) raise(Errc::invalid_tournament, "vertex count must be >= 1");
    std::vector<Bitset> beats(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    for (const auto& [w, l] : edges) {
        if (w < 0 || w >= n || l < 0 || l >= n)
            raise(Errc::invalid_tournament, "edge endpoint out of range");
        if (w == l) raise(Errc::invalid_tournament, "self-edge");
        if (beats[static_cast<std::size_t>(l)].test(static_cast<std::size_t>(w)))
            raise(Errc::invalid_tournament, "both directions present for a pair");
        beats[static_cast<std::size_t>(w)].set(static_cast<std::size_t>(l));
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!beats[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)) &&
                !beats[static_cast<std::size_t>(v)].test(static_cast<std::size_t>(u)))
                raise(Errc::invalid_tournament, "missing orientation for pair (" +
                                                    std::to_string(u) + "," + std::to_string(v) + ")");
    return Tournament(n, std::move(beats));
}

Tournament Tournament::from_permutation(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    if (n < 1) raise(Errc::invalid_input, "permutation must be non-empty");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            raise(Errc::invalid_input, "not a permutation of [0,n)");
        seen[static_cast<std::size_t>(v)] = true;
    }
    std::vector<Bitset> beats(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            beats[static_cast<std::size_t>(perm[i])].set(static_cast<std::size_t>(perm[j]));
    return Tournament(n, std::move(beats));
}

RevealedGraph::RevealedGraph(int n, ConflictPolicy policy) : n_(n), policy_(policy) {
    if (n < 1) raise(Errc::invalid_size, "vertex count must be >= 1");
    out_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    in_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
}

std::size_t RevealedGraph::add_edges(std::span<const Edge> batch, std::vector<Edge>* inserted) {
    for (const auto& [w, l] : batch) {
        if (w < 0 || w >= n_ || l < 0 || l >= n_)
            raise(Errc::invalid_edge, "endpoint out of range: (" + std::to_string(w) + "," +
                                          std::to_string(l) + ")");
        if (w == l) raise(Errc::invalid_edge, "self-edge on vertex " + std::to_string(w));
    }
    std::size_t added = 0;
    for (const auto& [w, l] : batch) {
        const auto wu = static_cast<std::size_t>(w), lu = static_cast<std::size_t>(l);
        if (out_[wu].test(lu)) continue;
        if (out_[lu].test(wu)) {
            if (policy_ == ConflictPolicy::reject)
                raise(Errc::contradictory_edge, "reverse of (" + std::to_string(w) + "," +
                                                    std::to_string(l) + ") already revealed");
            conflicts_.emplace_back(w, l);
            continue;
        }
        out_[wu].set(lu);
        in_[lu].set(wu);
        ++edge_count_;
        ++added;
        if (inserted) inserted->emplace_back(w, l);
    }
    ++round_;
    return added;
}

std::vector<Edge> RevealedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        out_[static_cast<std::size_t>(u)].for_each(
            [&](std::size_t v) { out.emplace_back(u, static_cast<int>(v)); });
    return out;
}

RevealedGraph full_reveal(const Tournament& t) {
    RevealedGraph g(t.size());
    std::vector<Edge> all;
    all.reserve(static_cast<std::size_t>(t.size()) * static_cast<std::size_t>(t.size() - 1) / 2);
    for (int u = 0; u < t.size(); ++u)
        t.row(u).for_each([&](std::size_t v) { all.emplace_back(u, static_cast<int>(v)); });
    g.add_edges(all);
    return g;
}

namespace {

// Closure per SCC: Tarjan emits components after everything they can reach,
// so one pass in emission order accumulates descendant masks.
std::vector<Bitset> descendants(int n, const std::vector<Bitset>& adj) {
    const SccDecomposition scc = scc_decompose_adj(n, adj);
    const int nc = static_cast<int>(scc.components.size());

    // comp_reach[c] = all vertices reachable from c, including c's members.
    std::vector<Bitset> comp_reach(static_cast<std::size_t>(nc), Bitset(static_cast<std::size_t>(n)));
    // Tarjan's emission order is reverse topological; canonical component ids
    // are re-sorted, so process in the preserved emission order instead.
    for (int c : scc.emission_order) {
        Bitset& r = comp_reach[static_cast<std::size_t>(c)];
        for (int u : scc.components[static_cast<std::size_t>(c)]) {
            r.set(static_cast<std::size_t>(u));
            adj[static_cast<std::size_t>(u)].for_each([&](std::size_t v) {
                const int cv = scc.member_of[v];
                if (cv != c) r |= comp_reach[static_cast<std::size_t>(cv)];
            });
        }
    }

    std::vector<Bitset> out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        Bitset r = comp_reach[static_cast<std::size_t>(scc.member_of[static_cast<std::size_t>(v)])];
        r.reset(static_cast<std::size_t>(v));
        out[static_cast<std::size_t>(v)] = std::move(r);
    }
    return out;
}

} // namespace

ReachSummary reach_summary(const RevealedGraph& g) {
    const int n = g.size();
    std::vector<Bitset> fwd(static_cast<std::size_t>(n)), bwd(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        fwd[static_cast<std::size_t>(v)] = g.out_row(v);
        bwd[static_cast<std::size_t>(v)] = g.in_row(v);
    }
    ReachSummary rs;
    rs.out_reach = descendants(n, fwd);
    rs.in_reach = descendants(n, bwd);
    rs.in_count.resize(static_cast<std::size_t>(n));
    rs.out_count.resize(static_cast<std::size_t>(n));
    rs.kappa.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto vu = static_cast<std::size_t>(v);
        rs.in_count[vu] = static_cast<int>(rs.in_reach[vu].count());
        rs.out_count[vu] = static_cast<int>(rs.out_reach[vu].count());
        rs.kappa[vu] = static_cast<int>(rs.in_reach[vu].union_count(rs.out_reach[vu]));
    }
    return rs;
}

RankSpectrum rank_spectrum(const ReachSummary& rs, int n, TieBreak tb) {
    RankSpectrum s;
    s.tie_break = tb;
    s.basis.resize(static_cast<std::size_t>(n));
    std::iota(s.basis.begin(), s.basis.end(), 0);
    std::stable_sort(s.basis.begin(), s.basis.end(), [&](int a, int b) {
        const int ia = rs.in_count[static_cast<std::size_t>(a)];
        const int ib = rs.in_count[static_cast<std::size_t>(b)];
        if (ia != ib) return ia < ib;
        return tb == TieBreak::ascending_id ? a < b : a > b;
    });
    s.values.reserve(static_cast<std::size_t>(n));
    for (int v : s.basis) s.values.push_back(rs.in_count[static_cast<std::size_t>(v)]);
    return s;
}

RankSpectrum rank_spectrum(const RevealedGraph& g, TieBreak tb) {
    return rank_spectrum(reach_summary(g), g.size(), tb);
}

int finalization_threshold(std::span<const int> values) {
    const int n = static_cast<int>(values.size());
    int prefix = 0; // longest prefix with values[i] = i-1 (1-based i)
    while (prefix < n && values[static_cast<std::size_t>(prefix)] == prefix) ++prefix;
    if (prefix == n) return n;
    for (int j = std::min(prefix, n - 2); j >= 1; --j)
        if (values[static_cast<std::size_t>(j - 1)] < values[static_cast<std::size_t>(j)]) return j;
    return 0;
}

FinalizationState finalization(const RankSpectrum& spectrum) {
    FinalizationState f;
    f.threshold = finalization_threshold(spectrum.values);
    f.top_set.assign(spectrum.basis.begin(), spectrum.basis.begin() + f.threshold);
    f.cand_set.assign(spectrum.basis.begin() + f.threshold, spectrum.basis.end());
    return f;
}

FinalizationState finalization(const RevealedGraph& g) {
    return finalization(rank_spectrum(g));
}

std::vector<int> resolved_set(const RevealedGraph& g) {
    const ReachSummary rs = reach_summary(g);
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (rs.kappa[static_cast<std::size_t>(v)] == g.size() - 1) out.push_back(v);
    return out;
}

RevealedGraph new_revealed(int n, ConflictPolicy policy) { return RevealedGraph(n, policy); }

namespace {

[[noreturn]] void format_fail(int line, const std::string& what) {
    raise(Errc::format_error, "line " + std::to_string(line) + ": " + what);
}

} // namespace

Tournament read_tournament(std::istream& in) {
    int n = -1;
    bool have_perm = false;
    std::vector<int> perm;
    std::vector<Edge> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "n") {
            if (n >= 0) format_fail(lineno, "duplicate n line");
            if (!(ls >> n) || n < 1) format_fail(lineno, "bad vertex count");
        } else if (tag == "e") {
            if (n < 0) format_fail(lineno, "e before n");
            if (have_perm) format_fail(lineno, "mixing e lines with a perm line");
            int w = 0, l = 0;
            if (!(ls >> w >> l)) format_fail(lineno, "expected: e <winner> <loser>");
            edges.emplace_back(w, l);
        } else if (tag == "perm") {
            if (n < 0) format_fail(lineno, "perm before n");
            if (!edges.empty()) format_fail(lineno, "mixing perm line with e lines");
            if (have_perm) format_fail(lineno, "duplicate perm line");
            have_perm = true;
            int v = 0;
            while (ls >> v) perm.push_back(v);
            if (static_cast<int>(perm.size()) != n)
                format_fail(lineno, "perm must list exactly n vertices");
        } else {
            format_fail(lineno, "unknown tag '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) format_fail(lineno, "trailing token '" + extra + "'");
    }
    if (n < 0) raise(Errc::format_error, "missing n line");
    try {
        if (have_perm) return Tournament::from_permutation(perm);
        return Tournament::from_edges(n, edges);
    } catch (const Error& e) {
        raise(Errc::format_error, e.what());
    }
}

Tournament read_tournament_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::format_error, "cannot open " + path);
    return read_tournament(in);
}

void write_tournament(std::ostream& out, const Tournament& t) {
    const int n = t.size();
    out << "n " << n << "\n";
    // A transitive tournament round-trips through its defining order.
    std::vector<int> by_indeg(static_cast<std::size_t>(n));
    std::iota(by_indeg.begin(), by_indeg.end(), 0);
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        t.row(u).for_each([&](std::size_t v) { ++indeg[v]; });
    std::sort(by_indeg.begin(), by_indeg.end(),
              [&](int a, int b) { return indeg[static_cast<std::size_t>(a)] < indeg[static_cast<std::size_t>(b)]; });
    bool transitive = true;
    for (std::size_t i = 0; i + 1 < by_indeg.size() && transitive; ++i)
        for (std::size_t j = i + 1; j < by_indeg.size() && transitive; ++j)
            if (!t.beats(by_indeg[i], by_indeg[j])) transitive = false;
    if (transitive) {
        out << "perm";
        for (int v : by_indeg) out << ' ' << v;
        out << "\n";
        return;
    }
    for (int u = 0; u < n; ++u)
        t.row(u).for_each([&](std::size_t v) { out << "e " << u << ' ' << v << "\n"; });
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_size: return "InvalidSize";
        case Errc::invalid_edge: return "InvalidEdge";
        case Errc::contradictory_edge: return "ContradictoryEdge";
        case Errc::invalid_input: return "InvalidInput";
        case Errc::invalid_tournament: return "InvalidTournament";
        case Errc::query_too_small: return "QueryTooSmall";
        case Errc::query_too_large: return "QueryTooLarge";
        case Errc::protocol_error: return "ProtocolError";
        case Errc::oracle_timeout: return "OracleTimeout";
        case Errc::replay_miss: return "ReplayMiss";
        case Errc::stalled_oracle: return "StalledOracle";
        case Errc::not_transitive: return "NotTransitive";
        case Errc::invalid_trace: return "InvalidTrace";
        case Errc::invalid_request: return "InvalidRequest";
        case Errc::format_error: return "FormatError";
        case Errc::internal_error: return "InternalError";
    }
    return "Error";
}

} // namespace tourney
