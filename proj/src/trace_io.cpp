#include "tourney/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace tourney {

namespace {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::blitz: return "blitz";
        case Algorithm::transitive: return "transitive";
        case Algorithm::general: return "general";
    }
    return "blitz";
}

} // namespace

std::string trace_json(const RunResult& result) {
    const RunTrace& t = result.trace;
    nlohmann::json j;
    j["n"] = t.n;
    j["k"] = t.k;
    j["m"] = t.m;
    j["options"] = {
        {"algorithm", algorithm_name(t.algorithm)},
        {"tie_break", t.tie_break == TieBreakPolicy::dagger ? "dagger" : "id"},
        {"rep_select", t.rep_select == RepSelect::min_kappa_then_id ? "min_kappa_then_id" : "min_id"},
        {"batch", t.batch},
        {"checkpoint_all_m", t.checkpoint_all_m},
    };
    auto& rounds = j["rounds"] = nlohmann::json::array();
    for (const RoundRecord& r : t.rounds) {
        nlohmann::json jr;
        jr["queries"] = r.queries;
        auto& ne = jr["new_edges"] = nlohmann::json::array();
        for (const auto& [w, l] : r.new_edges) ne.push_back({w, l});
        jr["resolved"] = r.resolved_count;
        rounds.push_back(std::move(jr));
    }
    j["total_queries"] = t.total_queries;
    j["top"] = result.top;
    j["top_inreach"] = result.top_inreach;
    j["tiers"] = result.tiers.tiers;
    if (t.checkpoint_all_m) j["checkpoints"] = t.checkpoints;
    return j.dump();
}

void write_trace_json(std::ostream& out, const RunResult& result) {
    out << trace_json(result) << "\n";
}

LoadedTrace load_trace_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::format_error, std::string("trace: ") + e.what());
    }
    LoadedTrace t;
    try {
        t.n = j.at("n").get<int>();
        t.k = j.at("k").get<int>();
        t.m = j.at("m").get<int>();
        t.total_queries = j.at("total_queries").get<std::uint64_t>();
        t.top = j.at("top").get<std::vector<int>>();
        for (const auto& jr : j.at("rounds")) {
            t.round_queries.push_back(jr.at("queries").get<std::vector<std::vector<int>>>());
            std::vector<Edge> edges;
            for (const auto& e : jr.at("new_edges"))
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            t.round_new_edges.push_back(std::move(edges));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::format_error, std::string("trace: ") + e.what());
    }
    return t;
}

LoadedTrace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::format_error, "cannot open " + path);
    return load_trace_json(in);
}

} // namespace tourney
