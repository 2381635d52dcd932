// Command-line surface: solve synthetic instances, run the horses demo,
// execute benchmark grids, rerank candidate files, verify traces.
//
// Exit codes: 0 ok, 1 usage, 2 format, 3 oracle, 4 internal,
//             5 bench hard-ceiling breach, 6 verify failure.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tourney/bench.hpp"
#include "tourney/demo.hpp"
#include "tourney/external_oracle.hpp"
#include "tourney/rerank.hpp"
#include "tourney/scheduler.hpp"
#include "tourney/trace_io.hpp"

namespace {

using namespace tourney;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::invalid_input:
        case Errc::invalid_size:
        case Errc::invalid_request:
            return 1;
        case Errc::format_error:
        case Errc::invalid_trace:
        case Errc::invalid_tournament:
            return 2;
        case Errc::query_too_small:
        case Errc::query_too_large:
        case Errc::protocol_error:
        case Errc::oracle_timeout:
        case Errc::replay_miss:
        case Errc::stalled_oracle:
        case Errc::not_transitive:
        case Errc::contradictory_edge:
        case Errc::invalid_edge:
            return 3;
        default:
            return 4;
    }
}

std::string join_ints(const std::vector<int>& v, bool plus_one = false) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i] + (plus_one ? 1 : 0));
    }
    return out;
}

/// Minimal shell-style splitter for --oracle-cmd: whitespace separated,
/// single/double quotes group, backslash escapes outside single quotes.
std::vector<std::string> split_command(const std::string& cmd) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (std::size_t i = 0; i < cmd.size(); ++i) {
        const char c = cmd[i];
        if (quote == '\'') {
            if (c == '\'') quote = 0;
            else cur += c;
        } else if (quote == '"') {
            if (c == '"') quote = 0;
            else if (c == '\\' && i + 1 < cmd.size()) cur += cmd[++i];
            else cur += c;
        } else if (c == '\'' || c == '"') {
            quote = c;
            have = true;
        } else if (c == '\\' && i + 1 < cmd.size()) {
            cur += cmd[++i];
            have = true;
        } else if (c == ' ' || c == '\t') {
            if (have || !cur.empty()) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (quote) raise(Errc::invalid_input, "unbalanced quote in command");
    if (have || !cur.empty()) out.push_back(cur);
    if (out.empty()) raise(Errc::invalid_input, "empty oracle command");
    return out;
}

struct SolveArgs {
    std::string input;
    int k = 0;
    int m = 0;
    std::string algorithm = "blitz";
    bool batch = false;
    bool dagger = false;
    std::string trace_path;
    bool json = false;
};

int run_solve(const SolveArgs& a) {
    const Tournament truth = read_tournament_file(a.input);
    MatrixOracle oracle(truth, a.k);

    RunOptions opts;
    opts.k = a.k;
    opts.m = a.m;
    opts.batch = a.batch;
    if (a.dagger) opts.tie_break = TieBreakPolicy::dagger;

    RunResult result;
    if (a.algorithm == "blitz")
        result = blitzrank(truth.size(), oracle, opts);
    else if (a.algorithm == "transitive")
        result = transitive_sort(truth.size(), oracle, opts);
    else if (a.algorithm == "general")
        result = general_sort(truth.size(), oracle, opts);
    else
        raise(Errc::invalid_input, "unknown algorithm " + a.algorithm);

    if (!a.trace_path.empty()) {
        std::ofstream out(a.trace_path);
        if (!out) raise(Errc::format_error, "cannot write " + a.trace_path);
        write_trace_json(out, result);
    }

    bool tied = false;
    std::set<int> top_tiers;
    for (int v : result.top) top_tiers.insert(result.tiers.tier_of[static_cast<std::size_t>(v)]);
    for (int ti : top_tiers)
        if (result.tiers.tiers[static_cast<std::size_t>(ti)].size() > 1) tied = true;

    if (a.json) {
        nlohmann::json j;
        j["queries"] = result.trace.total_queries;
        j["rounds"] = result.trace.rounds.size();
        j["top"] = result.top;
        j["top_inreach"] = result.top_inreach;
        j["tiers"] = result.tiers.tiers;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "queries=" << result.trace.total_queries
                  << " rounds=" << result.trace.rounds.size() << " top=" << join_ints(result.top)
                  << " inreach=" << join_ints(result.top_inreach) << "\n";
        if (tied)
            std::cout << "note: selected vertices share a tier (cyclic preferences); "
                         "within-tier order is arbitrary\n";
    }
    return 0;
}

struct BenchArgs {
    std::vector<int> n_values{100, 200};
    std::vector<int> k_values{5, 10, 20};
    int seeds = 20;
    std::string out_path;
    std::string summary_path;
    bool full_grid = false;
    double hard_ceiling = 1.5;
    bool json = false;
};

int run_bench(const BenchArgs& a) {
    GridConfig cfg;
    cfg.n_values = a.n_values;
    cfg.k_values = a.k_values;
    cfg.seeds = a.seeds;
    if (a.full_grid) {
        cfg.n_values = {100, 200, 400, 800};
        cfg.k_values = {5, 10, 20, 50};
    }
    const std::vector<BenchRecord> records = run_grid(cfg);

    {
        std::ofstream out(a.out_path);
        if (!out) raise(Errc::format_error, "cannot write " + a.out_path);
        write_records_csv(out, records);
    }
    if (!a.summary_path.empty()) {
        std::ofstream out(a.summary_path);
        if (!out) raise(Errc::format_error, "cannot write " + a.summary_path);
        write_summary_csv(out, summarize(records));
    }

    double worst = 0.0;
    int soft_violations = 0;
    for (const auto& r : records) {
        worst = std::max(worst, r.ratio_max);
        if (r.ratio_max > 1.25) {
            ++soft_violations;
            std::cerr << "warning: n=" << r.n << " k=" << r.k << " seed=" << r.seed
                      << " exceeds 1.25*bound (ratio " << r.ratio_max << ")\n";
        }
    }
    if (a.json) {
        nlohmann::json j;
        j["cells"] = records.size();
        j["max_ratio"] = worst;
        j["soft_violations"] = soft_violations;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "cells=" << records.size() << " max_ratio=" << worst
                  << " soft_violations=" << soft_violations << "\n";
    }
    return worst > a.hard_ceiling ? 5 : 0;
}

struct RerankArgs {
    std::string candidates_path;
    std::string query;
    std::string oracle_cmd;
    int k = 0;
    int m = 0;
    std::string record_path;
    std::string replay_path;
    std::string out_path;
    int timeout_ms = 30000;
    bool batch = false;
    bool json = false;
};

int run_rerank(const RerankArgs& a) {
    RerankRequest req;
    req.query_id = a.query;
    req.query_text = a.query;
    req.candidates = load_candidates_file(a.candidates_path);
    req.k = a.k;
    req.m = a.m;

    std::unique_ptr<Oracle> oracle;
    if (!a.replay_path.empty()) {
        oracle = std::make_unique<ReplayOracle>(ReplayLog::load_file(a.replay_path), a.k);
    } else {
        if (a.oracle_cmd.empty())
            raise(Errc::invalid_input, "--oracle-cmd is required unless --replay is given");
        oracle = std::make_unique<ExternalOracle>(split_command(a.oracle_cmd), a.k, a.timeout_ms);
    }

    RerankResult result;
    if (!a.record_path.empty()) {
        ReplayLog log;
        RecordingOracle recording(*oracle, log);
        result = rerank(req, recording, a.batch);
        log.save_file(a.record_path);
    } else {
        result = rerank(req, *oracle, a.batch);
    }
    emit_result_file(result, a.out_path);

    if (a.json)
        std::cout << result_json(result) << "\n";
    else
        std::cout << "oracle_calls=" << result.stats.query_count << " rounds=" << result.rounds
                  << " ranked=" << result.ranking.size() << "\n";
    return 0;
}

struct VerifyArgs {
    std::string trace_path;
    std::string truth_path;
    bool json = false;
};

int run_verify(const VerifyArgs& a) {
    const LoadedTrace trace = load_trace_file(a.trace_path);
    const Tournament truth = read_tournament_file(a.truth_path);

    std::string failure;
    const auto fail = [&](const std::string& why) {
        if (failure.empty()) failure = why;
    };

    if (trace.n != truth.size()) fail("vertex counts differ");
    RevealedGraph g(truth.size());
    std::uint64_t queries = 0;
    for (std::size_t ri = 0; ri < trace.round_queries.size() && failure.empty(); ++ri) {
        const auto& groups = trace.round_queries[ri];
        queries += groups.size();
        for (const auto& q : groups) {
            if (static_cast<int>(q.size()) < 2 || static_cast<int>(q.size()) > trace.k)
                fail("query size out of [2,k] in round " + std::to_string(ri + 1));
            for (int v : q)
                if (v < 0 || v >= trace.n) fail("query item out of range");
        }
        const auto& new_edges = trace.round_new_edges[ri];
        if (new_edges.empty()) fail("round " + std::to_string(ri + 1) + " made no progress");
        for (const auto& [w, l] : new_edges) {
            if (w < 0 || w >= trace.n || l < 0 || l >= trace.n || w == l) {
                fail("malformed edge in round " + std::to_string(ri + 1));
                break;
            }
            if (!truth.beats(w, l)) {
                fail("edge (" + std::to_string(w) + "," + std::to_string(l) +
                     ") is not in the ground truth");
                break;
            }
            bool covered = false;
            for (const auto& q : groups) {
                bool hw = false, hl = false;
                for (int v : q) {
                    hw = hw || v == w;
                    hl = hl || v == l;
                }
                if (hw && hl) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                fail("edge not covered by any query of its round");
                break;
            }
            if (g.has_edge(w, l)) {
                fail("edge re-reported as new");
                break;
            }
            g.add_edges(std::vector<Edge>{{w, l}});
        }
    }
    if (failure.empty() && queries != trace.total_queries) fail("total_queries mismatch");

    if (failure.empty()) {
        // Problem-1 validity of the reported top sequence, judged on the
        // full ground-truth reachability.
        const ReachSummary rs = reach_summary(full_reveal(truth));
        if (static_cast<int>(trace.top.size()) != trace.m) fail("top has wrong length");
        for (std::size_t i = 0; i + 1 < trace.top.size() && failure.empty(); ++i)
            if (rs.in_count[static_cast<std::size_t>(trace.top[i])] >
                rs.in_count[static_cast<std::size_t>(trace.top[i + 1])])
                fail("top sequence violates internal ordering");
        if (failure.empty()) {
            std::set<int> sel(trace.top.begin(), trace.top.end());
            if (static_cast<int>(sel.size()) != trace.m) fail("top contains duplicates");
            int top_max = 0, other_min = truth.size();
            for (int v = 0; v < truth.size(); ++v) {
                const int ic = rs.in_count[static_cast<std::size_t>(v)];
                if (sel.count(v))
                    top_max = std::max(top_max, ic);
                else
                    other_min = std::min(other_min, ic);
            }
            if (trace.m < truth.size() && top_max > other_min)
                fail("top set violates rank dominance");
        }
    }

    if (a.json) {
        nlohmann::json j;
        j["ok"] = failure.empty();
        if (!failure.empty()) j["reason"] = failure;
        std::cout << j.dump() << "\n";
    } else if (failure.empty()) {
        std::cout << "verify: OK (rounds=" << trace.round_queries.size()
                  << " queries=" << trace.total_queries << ")\n";
    } else {
        std::cout << "verify: FAIL " << failure << "\n";
    }
    return failure.empty() ? 0 : 6;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"top-m selection over unknown tournaments via a k-wise comparison oracle"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run a selection algorithm on a tournament file");
    solve->add_option("--input", solve_args.input, "tournament file")->required();
    solve->add_option("--k", solve_args.k, "max query size")->required();
    solve->add_option("--m", solve_args.m, "target count")->required();
    solve->add_option("--algorithm", solve_args.algorithm, "blitz|transitive|general")
        ->check(CLI::IsMember({"blitz", "transitive", "general"}));
    solve->add_flag("--batch", solve_args.batch, "parallel-round schedule (blitz only)");
    solve->add_flag("--dagger", solve_args.dagger, "canonical tie-breaking");
    solve->add_option("--trace", solve_args.trace_path, "write run trace JSON");
    solve->add_flag("--json", solve_args.json, "machine-readable stdout");

    auto* horses = app.add_subcommand("horses", "bundled 25/5/3 demo");
    bool horses_json = false;
    horses->add_flag("--json", horses_json, "machine-readable stdout");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "query-complexity grid, CSV output");
    bench->add_option("--n", bench_args.n_values, "instance sizes")->delimiter(',');
    bench->add_option("--k", bench_args.k_values, "query sizes")->delimiter(',');
    bench->add_option("--seeds", bench_args.seeds, "seeds per (n,k)");
    bench->add_option("--out", bench_args.out_path, "per-record CSV")->required();
    bench->add_option("--summary", bench_args.summary_path, "summary CSV");
    bench->add_flag("--full-grid", bench_args.full_grid, "n up to 800, k up to 50");
    bench->add_option("--hard-ceiling", bench_args.hard_ceiling,
                      "exit 5 when max ratio exceeds this");
    bench->add_flag("--json", bench_args.json, "machine-readable stdout");

    RerankArgs rerank_args;
    auto* rr = app.add_subcommand("rerank", "rerank a candidate file through an oracle command");
    rr->add_option("--candidates", rerank_args.candidates_path, "JSONL candidates")->required();
    rr->add_option("--query", rerank_args.query, "query text")->required();
    rr->add_option("--oracle-cmd", rerank_args.oracle_cmd, "oracle child command line");
    rr->add_option("--k", rerank_args.k, "max query size")->required();
    rr->add_option("--m", rerank_args.m, "target count")->required();
    auto* rec = rr->add_option("--record", rerank_args.record_path, "record oracle log");
    auto* rep = rr->add_option("--replay", rerank_args.replay_path, "replay oracle log");
    rec->excludes(rep);
    rr->add_option("--out", rerank_args.out_path, "result JSON path")->required();
    rr->add_option("--timeout-ms", rerank_args.timeout_ms, "oracle response timeout");
    rr->add_flag("--batch", rerank_args.batch, "parallel-round schedule");
    rr->add_flag("--json", rerank_args.json, "machine-readable stdout");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "replay a trace against a ground truth");
    verify->add_option("--trace", verify_args.trace_path, "trace JSON")->required();
    verify->add_option("--ground-truth", verify_args.truth_path, "tournament file")->required();
    verify->add_flag("--json", verify_args.json, "machine-readable stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (horses->parsed()) {
            const HorsesDemo demo = horses_demo();
            if (horses_json) {
                nlohmann::json j;
                j["queries"] = demo.queries;
                j["rounds"] = demo.rounds;
                j["top"] = demo.result.top;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << demo.text;
            }
            return 0;
        }
        if (bench->parsed()) return run_bench(bench_args);
        if (rr->parsed()) return run_rerank(rerank_args);
        if (verify->parsed()) return run_verify(verify_args);
    } catch (const tourney::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
