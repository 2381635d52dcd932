#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tourney/graph.hpp"

namespace tourney {

/// A set of 2..k distinct vertices to compare in one oracle call.
struct OracleQuery {
    std::vector<int> items;
};

/// Directed edges over the queried items. Synthetic oracles always return
/// the complete induced tournament; external ones may answer with any edge
/// subset, cycles included.
struct OracleResponse {
    std::vector<Edge> edges;
};

struct OracleStats {
    std::uint64_t query_count = 0;
    std::uint64_t token_proxy = 0; // sum of |items| over all calls
    std::vector<std::uint64_t> per_round_counts;
};

/// The k-wise comparison oracle contract. query() must be deterministic for
/// synthetic and replay oracles: same item set, same response.
class Oracle {
public:
    virtual ~Oracle() = default;

    virtual OracleResponse query(const OracleQuery& q) = 0;
    virtual int max_query_size() const = 0;

    /// Document texts keyed by vertex id, forwarded by payload-capable
    /// oracles (the external process one); a no-op elsewhere.
    virtual void set_payloads(const std::map<int, std::string>&) {}
};

/// Validates size/distinctness against k; shared by all implementations.
void validate_query(const OracleQuery& q, int k, int n);

/// Ground truth given as a total order: u beats v iff u precedes v.
class PermutationOracle : public Oracle {
public:
    PermutationOracle(std::span<const int> perm, int k);

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return k_; }
    int size() const { return static_cast<int>(position_.size()); }

private:
    std::vector<int> position_; // vertex -> rank (0 = best)
    int k_;
};

/// Ground truth given as an arbitrary (possibly cyclic) tournament.
class MatrixOracle : public Oracle {
public:
    MatrixOracle(Tournament t, int k);

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return k_; }
    int size() const { return truth_.size(); }

private:
    Tournament truth_;
    int k_;
};

/// Pass-through wrapper that counts calls and a size-weighted cost proxy.
class CountingOracle : public Oracle {
public:
    explicit CountingOracle(Oracle& inner) : inner_(inner) {}

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return inner_.max_query_size(); }
    void set_payloads(const std::map<int, std::string>& p) override { inner_.set_payloads(p); }

    /// Close the current round bucket of per_round_counts.
    void mark_round();

    const OracleStats& stats() const { return stats_; }

private:
    Oracle& inner_;
    OracleStats stats_;
    std::uint64_t round_start_ = 0;
};

/// Responses keyed by the sorted item set. Written/read as JSONL.
class ReplayLog {
public:
    void put(const std::vector<int>& items, const OracleResponse& r);
    const OracleResponse* find(const std::vector<int>& items) const;

    void save(std::ostream& out) const;
    static ReplayLog load(std::istream& in);
    void save_file(const std::string& path) const;
    static ReplayLog load_file(const std::string& path);

private:
    std::map<std::vector<int>, OracleResponse> entries_;
};

/// Pass-through wrapper that records every response into a ReplayLog.
class RecordingOracle : public Oracle {
public:
    RecordingOracle(Oracle& inner, ReplayLog& log) : inner_(inner), log_(log) {}

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return inner_.max_query_size(); }
    void set_payloads(const std::map<int, std::string>& p) override { inner_.set_payloads(p); }

private:
    Oracle& inner_;
    ReplayLog& log_;
};

/// Replays recorded responses verbatim; a query that was never recorded is a
/// replay_miss error.
class ReplayOracle : public Oracle {
public:
    ReplayOracle(ReplayLog log, int k) : log_(std::move(log)), k_(k) {}

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return k_; }

private:
    ReplayLog log_;
    int k_;
};

} // namespace tourney
