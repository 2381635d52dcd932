#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tourney/condensation.hpp"
#include "tourney/graph.hpp"
#include "tourney/oracle.hpp"

namespace tourney {

/// Scheduling order of candidate SCCs. default_id orders by ascending
/// condensation in-reach with ties by minimum member id; dagger orders by
/// (in-reach, out-reach, minimum member id) and is the canonical variant the
/// query-complexity benchmark is defined over.
enum class TieBreakPolicy { default_id, dagger };

/// How the representative vertex of a candidate SCC is picked.
enum class RepSelect { min_id, min_kappa_then_id };

enum class Algorithm { blitz, transitive, general };

struct RunOptions {
    int k = 2;
    int m = 1;
    TieBreakPolicy tie_break = TieBreakPolicy::default_id;
    /// Defaults to min_id, or min_kappa_then_id under dagger. Setting min_id
    /// together with dagger is rejected.
    std::optional<RepSelect> rep_select;
    bool batch = false;
    bool checkpoint_all_m = false;
};

struct RoundRecord {
    std::vector<std::vector<int>> queries;
    std::vector<Edge> new_edges;
    int resolved_count = 0;   // resolved vertices after this round's update
    int finalized_prefix = 0; // largest p with the p best-ranked vertices resolved
};

struct RunTrace {
    int n = 0;
    int k = 0;
    int m = 0;
    Algorithm algorithm = Algorithm::blitz;
    TieBreakPolicy tie_break = TieBreakPolicy::default_id;
    RepSelect rep_select = RepSelect::min_id;
    bool batch = false;
    bool checkpoint_all_m = false;
    std::vector<RoundRecord> rounds;
    std::uint64_t total_queries = 0; // oracle calls; in batch mode every group counts
    /// checkpoints[m-1] = oracle calls issued before the m best-ranked
    /// vertices were first all resolved; -1 where the run never reached it.
    std::vector<int> checkpoints;
    std::shared_ptr<const RevealedGraph> terminal;
};

struct RunResult {
    std::vector<int> top;
    std::vector<int> top_inreach;
    TieredRanking tiers;
    RunTrace trace;
};

/// Greedy resolution-based selection: each round recomputes in-reach and
/// kappa, stops once the m lowest-in-reach vertices are all resolved, and
/// otherwise queries one representative from each of the first min(k, ...)
/// unresolved SCCs in condensation order. In batch mode the whole ordered
/// representative list is chunked into disjoint groups of size <= k and the
/// maximal prefix of groups with no revealed connection between them is
/// issued in one round.
RunResult blitzrank(int n, Oracle& oracle, const RunOptions& opts);

/// Finalization-threshold variant for transitive ground truth: terminates
/// when the crystallized prefix reaches m; queries the k' lowest-ranked
/// candidates, padding from the finalized set when fewer than k remain.
/// A revealed cycle is a not_transitive error.
RunResult transitive_sort(int n, Oracle& oracle, const RunOptions& opts);

/// The same schedule run on the condensation; correct for arbitrary
/// tournaments. Output concatenates whole tiers and completes from the
/// boundary tier by ascending id.
RunResult general_sort(int n, Oracle& oracle, const RunOptions& opts);

/// T_1..T_n from a full-sort run (m = n, checkpoint_all_m set).
std::vector<int> extract_checkpoints(const RunTrace& trace);

} // namespace tourney
