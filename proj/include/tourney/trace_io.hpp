#pragma once

#include <iosfwd>
#include <string>

#include "tourney/scheduler.hpp"

namespace tourney {

/// JSON document for a finished run:
/// {"n":..,"k":..,"m":..,"options":{..},"rounds":[{"queries":[[ids]..],
///  "new_edges":[[w,l]..],"resolved":..}..],"total_queries":..,"top":[ids],
///  "top_inreach":[ints],"tiers":[[ids]..]}
/// plus "checkpoints" when the run recorded them.
std::string trace_json(const RunResult& result);
void write_trace_json(std::ostream& out, const RunResult& result);

/// The subset of a trace document that replay-style verification needs.
struct LoadedTrace {
    int n = 0;
    int k = 0;
    int m = 0;
    std::vector<std::vector<std::vector<int>>> round_queries;
    std::vector<std::vector<Edge>> round_new_edges;
    std::uint64_t total_queries = 0;
    std::vector<int> top;
};

LoadedTrace load_trace_json(std::istream& in);
LoadedTrace load_trace_file(const std::string& path);

} // namespace tourney
