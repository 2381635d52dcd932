#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tourney/bitset.hpp"
#include "tourney/error.hpp"

namespace tourney {

/// Directed edge (winner, loser).
using Edge = std::pair<int, int>;

/// Complete orientation on n vertices: for every unordered pair exactly one
/// direction holds. Ground truth for synthetic oracles and verification.
class Tournament {
public:
    static Tournament from_edges(int n, std::span<const Edge> edges);
    static Tournament from_permutation(std::span<const int> perm);

    int size() const { return n_; }
    bool beats(int u, int v) const { return beats_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)); }

    const Bitset& row(int u) const { return beats_[static_cast<std::size_t>(u)]; }

private:
    Tournament(int n, std::vector<Bitset> beats) : n_(n), beats_(std::move(beats)) {}

    int n_ = 0;
    std::vector<Bitset> beats_;
};

/// How to treat an edge insertion whose reverse is already present.
/// Synthetic oracles never produce one; a real oracle flipping a pair across
/// queries is out of model and surfaces here.
enum class ConflictPolicy { reject, keep_first };

/// The edge set accumulated from oracle responses, with both adjacency
/// directions kept as bitset rows.
class RevealedGraph {
public:
    explicit RevealedGraph(int n, ConflictPolicy policy = ConflictPolicy::reject);

    int size() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }
    int round() const { return round_; }

    bool has_edge(int u, int v) const {
        return out_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    /// Insert a batch of edges; returns how many were not already present.
    /// Duplicates are ignored; self-loops and out-of-range endpoints throw
    /// invalid_edge; a reversed duplicate follows the conflict policy.
    /// Each call advances the round counter by one.
    std::size_t add_edges(std::span<const Edge> batch, std::vector<Edge>* inserted = nullptr);

    const Bitset& out_row(int u) const { return out_[static_cast<std::size_t>(u)]; }
    const Bitset& in_row(int v) const { return in_[static_cast<std::size_t>(v)]; }

    std::vector<Edge> edges() const;

    /// Conflicts observed under ConflictPolicy::keep_first.
    const std::vector<Edge>& conflicts() const { return conflicts_; }

    bool operator==(const RevealedGraph& o) const {
        return n_ == o.n_ && out_ == o.out_;
    }

private:
    int n_;
    std::vector<Bitset> out_;
    std::vector<Bitset> in_;
    std::size_t edge_count_ = 0;
    int round_ = 0;
    ConflictPolicy policy_;
    std::vector<Edge> conflicts_;
};

/// Reveal every edge of a tournament at once (closure checks, verification).
RevealedGraph full_reveal(const Tournament& t);

/// Exact reachability of every vertex: who reaches v (in-reach), whom v
/// reaches (out-reach), and kappa = |in ∪ out|. A vertex with kappa = n-1 is
/// resolved: its relation to every other vertex is implied.
struct ReachSummary {
    std::vector<Bitset> in_reach;
    std::vector<Bitset> out_reach;
    std::vector<int> in_count;
    std::vector<int> out_count;
    std::vector<int> kappa;

    bool resolved(int v, int n) const { return kappa[static_cast<std::size_t>(v)] == n - 1; }
};

ReachSummary reach_summary(const RevealedGraph& g);

enum class TieBreak { ascending_id, descending_id };

/// Non-decreasing sequence of in-reach counts plus a vertex order realizing
/// it. values is independent of the tie policy; basis is not.
struct RankSpectrum {
    std::vector<int> values;
    std::vector<int> basis;
    TieBreak tie_break = TieBreak::ascending_id;
};

RankSpectrum rank_spectrum(const RevealedGraph& g, TieBreak tb = TieBreak::ascending_id);
RankSpectrum rank_spectrum(const ReachSummary& rs, int n, TieBreak tb = TieBreak::ascending_id);

/// Crystallized prefix of the rank spectrum: the largest j with
/// values[i] = i-1 for i <= j and (j in {0,n} or values[j] < values[j+1]),
/// plus the induced TOP/CAND partition.
struct FinalizationState {
    int threshold = 0;
    std::vector<int> top_set;
    std::vector<int> cand_set;
};

FinalizationState finalization(const RevealedGraph& g);
FinalizationState finalization(const RankSpectrum& spectrum);

/// Threshold alone, from a non-decreasing value sequence.
int finalization_threshold(std::span<const int> values);

/// Vertices whose relation to every other vertex is already implied.
std::vector<int> resolved_set(const RevealedGraph& g);

RevealedGraph new_revealed(int n, ConflictPolicy policy = ConflictPolicy::reject);

/// Text format: `n <count>` first, then either `e <winner> <loser>` lines or
/// a single `perm <v1> ... <vn>` line (earlier vertices beat later ones).
/// Blank lines and `#` comments are ignored.
Tournament read_tournament(std::istream& in);
Tournament read_tournament_file(const std::string& path);
void write_tournament(std::ostream& out, const Tournament& t);

} // namespace tourney
