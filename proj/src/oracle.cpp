#include "tourney/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"

namespace tourney {

void validate_query(const OracleQuery& q, int k, int n) {
    if (static_cast<int>(q.items.size()) < 2)
        raise(Errc::query_too_small, "query needs at least 2 items");
    if (static_cast<int>(q.items.size()) > k)
        raise(Errc::query_too_large, "query of " + std::to_string(q.items.size()) +
                                         " items exceeds k=" + std::to_string(k));
    std::set<int> seen;
    for (int v : q.items) {
        if (n >= 0 && (v < 0 || v >= n)) raise(Errc::invalid_input, "item out of range");
        if (!seen.insert(v).second) raise(Errc::invalid_input, "duplicate item in query");
    }
}

PermutationOracle::PermutationOracle(std::span<const int> perm, int k) : k_(k) {
    const int n = static_cast<int>(perm.size());
    if (k < 2) raise(Errc::invalid_input, "k must be >= 2");
    position_.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int v = perm[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || position_[static_cast<std::size_t>(v)] >= 0)
            raise(Errc::invalid_input, "not a permutation of [0,n)");
        position_[static_cast<std::size_t>(v)] = i;
    }
}

OracleResponse PermutationOracle::query(const OracleQuery& q) {
    validate_query(q, k_, size());
    OracleResponse r;
    for (std::size_t i = 0; i < q.items.size(); ++i)
        for (std::size_t j = i + 1; j < q.items.size(); ++j) {
            const int u = q.items[i], v = q.items[j];
            if (position_[static_cast<std::size_t>(u)] < position_[static_cast<std::size_t>(v)])
                r.edges.emplace_back(u, v);
            else
                r.edges.emplace_back(v, u);
        }
    return r;
}

MatrixOracle::MatrixOracle(Tournament t, int k) : truth_(std::move(t)), k_(k) {
    if (k < 2) raise(Errc::invalid_input, "k must be >= 2");
}

OracleResponse MatrixOracle::query(const OracleQuery& q) {
    validate_query(q, k_, truth_.size());
    OracleResponse r;
    for (std::size_t i = 0; i < q.items.size(); ++i)
        for (std::size_t j = i + 1; j < q.items.size(); ++j) {
            const int u = q.items[i], v = q.items[j];
            if (truth_.beats(u, v))
                r.edges.emplace_back(u, v);
            else
                r.edges.emplace_back(v, u);
        }
    return r;
}

OracleResponse CountingOracle::query(const OracleQuery& q) {
    OracleResponse r = inner_.query(q);
    ++stats_.query_count;
    stats_.token_proxy += q.items.size();
    return r;
}

void CountingOracle::mark_round() {
    stats_.per_round_counts.push_back(stats_.query_count - round_start_);
    round_start_ = stats_.query_count;
}

namespace {

std::vector<int> sorted_key(const std::vector<int>& items) {
    std::vector<int> key = items;
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace

void ReplayLog::put(const std::vector<int>& items, const OracleResponse& r) {
    entries_[sorted_key(items)] = r;
}

const OracleResponse* ReplayLog::find(const std::vector<int>& items) const {
    const auto it = entries_.find(sorted_key(items));
    return it == entries_.end() ? nullptr : &it->second;
}

void ReplayLog::save(std::ostream& out) const {
    for (const auto& [items, resp] : entries_) {
        nlohmann::json j;
        j["items"] = items;
        auto& edges = j["edges"] = nlohmann::json::array();
        for (const auto& [w, l] : resp.edges) edges.push_back({w, l});
        out << j.dump() << "\n";
    }
}

ReplayLog ReplayLog::load(std::istream& in) {
    ReplayLog log;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            raise(Errc::format_error, "replay log line " + std::to_string(lineno) + ": " + e.what());
        }
        OracleResponse r;
        for (const auto& e : j.at("edges")) r.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        log.entries_[j.at("items").get<std::vector<int>>()] = std::move(r);
    }
    return log;
}

void ReplayLog::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) raise(Errc::format_error, "cannot write " + path);
    save(out);
}

ReplayLog ReplayLog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::format_error, "cannot open " + path);
    return load(in);
}

OracleResponse RecordingOracle::query(const OracleQuery& q) {
    OracleResponse r = inner_.query(q);
    log_.put(q.items, r);
    return r;
}

OracleResponse ReplayOracle::query(const OracleQuery& q) {
    validate_query(q, k_, -1);
    const OracleResponse* r = log_.find(q.items);
    if (!r) raise(Errc::replay_miss, "no recorded response for this item set");
    return *r;
}

} // namespace tourney
