#include "tourney/scheduler.hpp"

#include <algorithm>
#include <numeric>

namespace tourney {

namespace {

RepSelect resolve_rep(const RunOptions& opts) {
    if (opts.rep_select) {
        if (opts.tie_break == TieBreakPolicy::dagger && *opts.rep_select == RepSelect::min_id)
            raise(Errc::invalid_input, "dagger tie-break requires min_kappa_then_id representatives");
        return *opts.rep_select;
    }
    return opts.tie_break == TieBreakPolicy::dagger ? RepSelect::min_kappa_then_id
                                                    : RepSelect::min_id;
}

void validate_run(int n, Oracle& oracle, const RunOptions& opts) {
    if (n < 1) raise(Errc::invalid_size, "vertex count must be >= 1");
    if (opts.k < 2) raise(Errc::invalid_input, "k must be >= 2");
    if (opts.m < 1 || opts.m > n) raise(Errc::invalid_input, "m must be in [1,n]");
    if (oracle.max_query_size() != opts.k)
        raise(Errc::invalid_input, "oracle query size differs from options k");
}

/// Candidate SCCs (those holding an unresolved vertex) in schedule order,
/// with the representative vertex of each.
struct CandidateOrder {
    std::vector<int> comps;
    std::vector<int> reps;
};

CandidateOrder order_candidates(const CondensationGraph& cond, const ReachSummary& rs, int n,
                                TieBreakPolicy tie, RepSelect rep) {
    CandidateOrder out;
    for (int c = 0; c < cond.count(); ++c) {
        bool unresolved = false;
        for (int v : cond.scc.components[static_cast<std::size_t>(c)])
            if (rs.kappa[static_cast<std::size_t>(v)] < n - 1) {
                unresolved = true;
                break;
            }
        if (unresolved) out.comps.push_back(c);
    }
    std::sort(out.comps.begin(), out.comps.end(), [&](int a, int b) {
        const auto au = static_cast<std::size_t>(a), bu = static_cast<std::size_t>(b);
        if (cond.in_count[au] != cond.in_count[bu]) return cond.in_count[au] < cond.in_count[bu];
        if (tie == TieBreakPolicy::dagger && cond.out_count[au] != cond.out_count[bu])
            return cond.out_count[au] < cond.out_count[bu];
        return cond.scc.min_member(a) < cond.scc.min_member(b);
    });
    out.reps.reserve(out.comps.size());
    for (int c : out.comps) {
        const auto& members = cond.scc.components[static_cast<std::size_t>(c)];
        int best = members.front(); // members ascend, so this is min_id
        if (rep == RepSelect::min_kappa_then_id)
            for (int v : members) {
                if (rs.kappa[static_cast<std::size_t>(v)] < rs.kappa[static_cast<std::size_t>(best)])
                    best = v;
            }
        out.reps.push_back(best);
    }
    return out;
}

/// Consecutive groups of size <= k covering the whole list. A size-1
/// remainder cannot form a query, so the last two groups are rebalanced to
/// (k-1, 2); with k = 2 the leftover vertex simply waits for the next round.
std::vector<std::vector<int>> chunk_reps(const std::vector<int>& reps, int k) {
    std::vector<std::vector<int>> groups;
    const std::size_t r = reps.size();
    for (std::size_t at = 0; at < r; at += static_cast<std::size_t>(k)) {
        const std::size_t len = std::min<std::size_t>(static_cast<std::size_t>(k), r - at);
        groups.emplace_back(reps.begin() + static_cast<std::ptrdiff_t>(at),
                            reps.begin() + static_cast<std::ptrdiff_t>(at + len));
    }
    if (groups.size() >= 2 && groups.back().size() == 1) {
        if (k >= 3) {
            auto& prev = groups[groups.size() - 2];
            groups.back().insert(groups.back().begin(), prev.back());
            prev.pop_back();
        } else {
            groups.pop_back();
        }
    }
    if (groups.size() == 1 && groups.back().size() == 1) groups.pop_back();
    return groups;
}

/// Groups can share one round only while no revealed path connects them;
/// once connected, the later group's schedule would depend on the earlier
/// group's outcome, so it is deferred.
std::size_t independent_prefix(const std::vector<std::vector<int>>& groups,
                               const ReachSummary& rs, int n) {
    Bitset members(static_cast<std::size_t>(n));
    Bitset reach(static_cast<std::size_t>(n));
    std::size_t taken = 0;
    for (const auto& g : groups) {
        Bitset gm(static_cast<std::size_t>(n));
        Bitset gr(static_cast<std::size_t>(n));
        for (int v : g) {
            gm.set(static_cast<std::size_t>(v));
            gr |= rs.out_reach[static_cast<std::size_t>(v)];
        }
        if (taken > 0 && (reach.intersects(gm) || gr.intersects(members))) break;
        members |= gm;
        reach |= gr;
        ++taken;
    }
    return taken;
}

int resolved_prefix(const RankSpectrum& spec, const ReachSummary& rs, int n) {
    int c = 0;
    for (int v : spec.basis) {
        if (rs.kappa[static_cast<std::size_t>(v)] != n - 1) break;
        ++c;
    }
    return c;
}

struct Runner {
    int n;
    Oracle& oracle;
    const RunOptions& opts;
    RepSelect rep;
    Algorithm algo;

    RevealedGraph g;
    RunTrace trace;
    RoundRecord* pending = nullptr;

    Runner(int n_, Oracle& o, const RunOptions& op, Algorithm a)
        : n(n_), oracle(o), opts(op), rep(resolve_rep(op)), algo(a), g(n_) {
        trace.n = n;
        trace.k = opts.k;
        trace.m = opts.m;
        trace.algorithm = algo;
        trace.tie_break = opts.tie_break;
        trace.rep_select = rep;
        trace.batch = opts.batch;
        trace.checkpoint_all_m = opts.checkpoint_all_m;
        trace.checkpoints.assign(static_cast<std::size_t>(n), -1);
    }

    /// Bookkeeping at every state evaluation: close out the previous round's
    /// record and advance the per-m checkpoints.
    void observe_state(const ReachSummary& rs, const RankSpectrum& spec) {
        int resolved = 0;
        for (int v = 0; v < n; ++v)
            if (rs.kappa[static_cast<std::size_t>(v)] == n - 1) ++resolved;
        const int c = resolved_prefix(spec, rs, n);
        if (pending) {
            pending->resolved_count = resolved;
            pending->finalized_prefix = c;
            pending = nullptr;
        }
        if (opts.checkpoint_all_m)
            for (int m1 = 1; m1 <= c; ++m1) {
                auto& slot = trace.checkpoints[static_cast<std::size_t>(m1 - 1)];
                if (slot < 0) slot = static_cast<int>(trace.total_queries);
            }
    }

    /// Issue one round of queries; a round yielding nothing new is retried
    /// once with the same sets, then reported as a stalled oracle.
    void issue_round(const std::vector<std::vector<int>>& groups) {
        trace.rounds.emplace_back();
        RoundRecord& rec = trace.rounds.back();
        std::size_t fresh = 0;
        for (int attempt = 0; attempt < 2 && fresh == 0; ++attempt) {
            std::vector<Edge> revealed;
            for (const auto& q : groups) {
                OracleResponse resp = oracle.query(OracleQuery{q});
                rec.queries.push_back(q);
                ++trace.total_queries;
                revealed.insert(revealed.end(), resp.edges.begin(), resp.edges.end());
            }
            fresh += g.add_edges(revealed, &rec.new_edges);
        }
        if (fresh == 0)
            raise(Errc::stalled_oracle, "round revealed no new edge twice in a row");
        pending = &rec;
    }

    RunResult finish(const ReachSummary& rs, std::vector<int> top) {
        RunResult res;
        res.top_inreach.reserve(top.size());
        for (int v : top) res.top_inreach.push_back(rs.in_count[static_cast<std::size_t>(v)]);
        res.top = std::move(top);
        res.tiers = tiered_ranking(g);
        trace.terminal = std::make_shared<const RevealedGraph>(g);
        res.trace = std::move(trace);
        return res;
    }

    std::uint64_t round_cap() const {
        const auto nn = static_cast<std::uint64_t>(n);
        return nn * (nn - 1) / 2 + 2;
    }
};

} // namespace

RunResult blitzrank(int n, Oracle& oracle, const RunOptions& opts) {
    validate_run(n, oracle, opts);
    Runner run(n, oracle, opts, Algorithm::blitz);

    for (std::uint64_t iter = 0;; ++iter) {
        if (iter > run.round_cap())
            raise(Errc::internal_error, "did not terminate within the edge-count bound");
        const ReachSummary rs = reach_summary(run.g);
        const RankSpectrum spec = rank_spectrum(rs, n);
        run.observe_state(rs, spec);

        bool top_resolved = true;
        for (int i = 0; i < opts.m; ++i)
            if (rs.kappa[static_cast<std::size_t>(spec.basis[static_cast<std::size_t>(i)])] != n - 1) {
                top_resolved = false;
                break;
            }
        if (top_resolved) {
            std::vector<int> top(spec.basis.begin(), spec.basis.begin() + opts.m);
            return run.finish(rs, std::move(top));
        }

        const CondensationGraph cond = condense(run.g);
        const CandidateOrder cand =
            order_candidates(cond, rs, n, opts.tie_break, run.rep);

        std::vector<std::vector<int>> groups;
        if (!opts.batch) {
            const auto take = std::min<std::size_t>(static_cast<std::size_t>(opts.k), cand.reps.size());
            groups.emplace_back(cand.reps.begin(), cand.reps.begin() + static_cast<std::ptrdiff_t>(take));
        } else {
            groups = chunk_reps(cand.reps, opts.k);
            groups.resize(independent_prefix(groups, rs, n));
        }
        if (groups.empty() || groups.front().size() < 2)
            raise(Errc::internal_error, "scheduler produced an unqueryable group");
        run.issue_round(groups);
    }
}

RunResult transitive_sort(int n, Oracle& oracle, const RunOptions& opts) {
    validate_run(n, oracle, opts);
    if (opts.batch) raise(Errc::invalid_input, "batch mode applies to the blitz algorithm only");
    Runner run(n, oracle, opts, Algorithm::transitive);

    for (std::uint64_t iter = 0;; ++iter) {
        if (iter > run.round_cap())
            raise(Errc::internal_error, "did not terminate within the edge-count bound");
        const ReachSummary rs = reach_summary(run.g);
        for (int v = 0; v < n; ++v)
            if (rs.in_reach[static_cast<std::size_t>(v)].intersects(rs.out_reach[static_cast<std::size_t>(v)]))
                raise(Errc::not_transitive, "revealed graph contains a cycle");
        const RankSpectrum spec = rank_spectrum(rs, n);
        run.observe_state(rs, spec);

        const int mt = finalization_threshold(spec.values);
        if (mt >= opts.m) {
            std::vector<int> top(spec.basis.begin(), spec.basis.begin() + opts.m);
            return run.finish(rs, std::move(top));
        }

        const int kp = std::min(opts.k, n - mt);
        std::vector<int> q(spec.basis.begin() + mt, spec.basis.begin() + mt + kp);
        if (kp < opts.k) {
            std::vector<int> finalized(spec.basis.begin(), spec.basis.begin() + mt);
            std::sort(finalized.begin(), finalized.end());
            const int need = std::min(opts.k - kp, mt);
            q.insert(q.end(), finalized.begin(), finalized.begin() + need);
        }
        run.issue_round({q});
    }
}

RunResult general_sort(int n, Oracle& oracle, const RunOptions& opts) {
    validate_run(n, oracle, opts);
    if (opts.batch) raise(Errc::invalid_input, "batch mode applies to the blitz algorithm only");
    Runner run(n, oracle, opts, Algorithm::general);

    for (std::uint64_t iter = 0;; ++iter) {
        if (iter > run.round_cap())
            raise(Errc::internal_error, "did not terminate within the edge-count bound");
        const ReachSummary rs = reach_summary(run.g);
        const RankSpectrum spec = rank_spectrum(rs, n);
        run.observe_state(rs, spec);

        const CondensationGraph cond = condense(run.g);
        const int nc = cond.count();
        std::vector<int> basis(static_cast<std::size_t>(nc));
        std::iota(basis.begin(), basis.end(), 0);
        std::sort(basis.begin(), basis.end(), [&](int a, int b) {
            const auto au = static_cast<std::size_t>(a), bu = static_cast<std::size_t>(b);
            if (cond.in_count[au] != cond.in_count[bu]) return cond.in_count[au] < cond.in_count[bu];
            return cond.scc.min_member(a) < cond.scc.min_member(b);
        });
        std::vector<int> values(static_cast<std::size_t>(nc));
        for (int i = 0; i < nc; ++i)
            values[static_cast<std::size_t>(i)] =
                cond.in_count[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
        const int mt = finalization_threshold(values);

        int top_size = 0;
        for (int i = 0; i < mt; ++i)
            top_size += static_cast<int>(
                cond.scc.components[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])].size());

        if (top_size >= opts.m) {
            std::vector<int> top;
            int filled = 0;
            for (int i = 0; i < mt && filled < opts.m; ++i) {
                const auto& members =
                    cond.scc.components[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
                const int take = std::min<int>(static_cast<int>(members.size()), opts.m - filled);
                top.insert(top.end(), members.begin(), members.begin() + take);
                filled += take;
            }
            return run.finish(rs, std::move(top));
        }

        const int kp = std::min(opts.k, nc - mt);
        std::vector<int> chosen(basis.begin() + mt, basis.begin() + mt + kp);
        if (kp < opts.k) {
            std::vector<int> finalized(basis.begin(), basis.begin() + mt);
            std::sort(finalized.begin(), finalized.end(), [&](int a, int b) {
                return cond.scc.min_member(a) < cond.scc.min_member(b);
            });
            const int need = std::min(opts.k - kp, mt);
            chosen.insert(chosen.end(), finalized.begin(), finalized.begin() + need);
        }
        std::vector<int> q;
        q.reserve(chosen.size());
        for (int c : chosen) {
            const auto& members = cond.scc.components[static_cast<std::size_t>(c)];
            int best = members.front();
            if (run.rep == RepSelect::min_kappa_then_id)
                for (int v : members)
                    if (rs.kappa[static_cast<std::size_t>(v)] < rs.kappa[static_cast<std::size_t>(best)])
                        best = v;
            q.push_back(best);
        }
        run.issue_round({q});
    }
}

std::vector<int> extract_checkpoints(const RunTrace& trace) {
    if (!trace.checkpoint_all_m)
        raise(Errc::invalid_trace, "run was executed without checkpoint_all_m");
    if (trace.m != trace.n)
        raise(Errc::invalid_trace, "checkpoints require a full-sort run (m = n)");
    for (int v : trace.checkpoints)
        if (v < 0) raise(Errc::invalid_trace, "incomplete checkpoint sequence");
    return trace.checkpoints;
}

} // namespace tourney
