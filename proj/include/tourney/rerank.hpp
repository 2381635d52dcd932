#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tourney/oracle.hpp"
#include "tourney/scheduler.hpp"

namespace tourney {

struct Candidate {
    std::string doc_id;
    std::string text;
    double prior_score = 0.0; // e.g. first-stage retrieval score
};

struct RerankRequest {
    std::string query_id;
    std::string query_text;
    std::vector<Candidate> candidates;
    int k = 2;
    int m = 1;
};

struct RankedDoc {
    std::string doc_id;
    int tier = 0;
    int inreach = 0;
    double score = 0.0;
};

struct RerankResult {
    std::string query_id;
    std::vector<RankedDoc> ranking; // length m; tier non-decreasing, score non-increasing inside a tier
    OracleStats stats;
    std::uint64_t rounds = 0;
    RunResult run; // full trace for verification / replay comparison
};

/// Maps doc ids to vertex ids, drives the selection loop through the oracle
/// (documents ride along as payloads), and converts the terminal graph into
/// a tiered top-m. Ties inside the boundary tier go to the higher prior
/// score, then the earlier candidate.
RerankResult rerank(const RerankRequest& req, Oracle& oracle, bool batch = false);

/// JSONL, one {"doc_id":..,"text":..,"score":..} object per line.
std::vector<Candidate> load_candidates(std::istream& in);
std::vector<Candidate> load_candidates_file(const std::string& path);

/// JSON: {"query_id":..,"ranking":[{"doc_id":..,"tier":..,"inreach":..,
/// "score":..}...],"oracle_calls":..,"rounds":..}
void emit_result(const RerankResult& result, std::ostream& out);
void emit_result_file(const RerankResult& result, const std::string& path);
std::string result_json(const RerankResult& result);

} // namespace tourney
