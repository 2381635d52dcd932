#include "tourney/rerank.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

namespace tourney {

RerankResult rerank(const RerankRequest& req, Oracle& oracle, bool batch) {
    const int n = static_cast<int>(req.candidates.size());
    if (n < 1) raise(Errc::invalid_request, "no candidates");
    if (req.m < 1 || req.m > n) raise(Errc::invalid_request, "m must be in [1, candidate count]");
    if (req.k < 2) raise(Errc::invalid_request, "k must be >= 2");
    {
        std::set<std::string> ids;
        for (const auto& c : req.candidates)
            if (!ids.insert(c.doc_id).second)
                raise(Errc::invalid_request, "duplicate doc_id " + c.doc_id);
    }

    std::map<int, std::string> payloads;
    for (int v = 0; v < n; ++v) payloads[v] = req.candidates[static_cast<std::size_t>(v)].text;
    oracle.set_payloads(payloads);

    CountingOracle counting(oracle);
    RunOptions opts;
    opts.k = req.k;
    opts.m = req.m;
    opts.batch = batch;
    RunResult run = blitzrank(n, counting, opts);

    // Tiers of the terminal graph with the prior score as the within-tier
    // key; the m slots fill tier by tier, the boundary tier by score.
    std::vector<double> scores(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) scores[static_cast<std::size_t>(v)] = req.candidates[static_cast<std::size_t>(v)].prior_score;
    const TieredRanking tiers = tiered_ranking(*run.trace.terminal, &scores);
    const ReachSummary rs = reach_summary(*run.trace.terminal);

    RerankResult out;
    out.query_id = req.query_id;
    int filled = 0;
    for (int ti = 0; ti < tiers.tier_count() && filled < req.m; ++ti) {
        const auto& tier = tiers.tiers[static_cast<std::size_t>(ti)];
        const int take = std::min<int>(static_cast<int>(tier.size()), req.m - filled);
        for (int i = 0; i < take; ++i) {
            const int v = tier[static_cast<std::size_t>(i)];
            RankedDoc d;
            d.doc_id = req.candidates[static_cast<std::size_t>(v)].doc_id;
            d.tier = ti;
            d.inreach = rs.in_count[static_cast<std::size_t>(v)];
            d.score = scores[static_cast<std::size_t>(v)];
            out.ranking.push_back(std::move(d));
        }
        filled += take;
    }
    out.stats = counting.stats();
    out.rounds = run.trace.rounds.size();
    out.run = std::move(run);
    out.run.tiers = tiers; // keep the score-ordered tiers with the result
    return out;
}

std::vector<Candidate> load_candidates(std::istream& in) {
    std::vector<Candidate> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            raise(Errc::format_error, "line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("doc_id") || !j.contains("text") || !j.contains("score"))
            raise(Errc::format_error,
                  "line " + std::to_string(lineno) + ": expected doc_id/text/score object");
        Candidate c;
        try {
            c.doc_id = j["doc_id"].get<std::string>();
            c.text = j["text"].get<std::string>();
            c.prior_score = j["score"].get<double>();
        } catch (const nlohmann::json::exception& e) {
            raise(Errc::format_error, "line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Candidate> load_candidates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::format_error, "cannot open " + path);
    return load_candidates(in);
}

std::string result_json(const RerankResult& result) {
    nlohmann::json j;
    j["query_id"] = result.query_id;
    auto& ranking = j["ranking"] = nlohmann::json::array();
    for (const auto& d : result.ranking)
        ranking.push_back({{"doc_id", d.doc_id},
                           {"tier", d.tier},
                           {"inreach", d.inreach},
                           {"score", d.score}});
    j["oracle_calls"] = result.stats.query_count;
    j["rounds"] = result.rounds;
    return j.dump();
}

void emit_result(const RerankResult& result, std::ostream& out) {
    out << result_json(result) << "\n";
}

void emit_result_file(const RerankResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::format_error, "cannot write " + path);
    emit_result(result, out);
}

} // namespace tourney
