#include "tourney/demo.hpp"

#include <numeric>
#include <sstream>

#include "tourney/oracle.hpp"

namespace tourney {

HorsesDemo horses_demo() {
    const int n = 25, k = 5, m = 3;
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    PermutationOracle oracle(identity, k);

    RunOptions opts;
    opts.k = k;
    opts.m = m;
    opts.batch = true;
    HorsesDemo demo;
    demo.result = blitzrank(n, oracle, opts);
    demo.queries = demo.result.trace.total_queries;
    demo.rounds = demo.result.trace.rounds.size();

    std::ostringstream out;
    out << "25 horses, 5 per race, fastest 3 wanted\n";

    RevealedGraph g(n);
    int race_no = 0;
    for (std::size_t ri = 0; ri < demo.result.trace.rounds.size(); ++ri) {
        const RoundRecord& rec = demo.result.trace.rounds[ri];
        const int first = race_no + 1;
        const int last = race_no + static_cast<int>(rec.queries.size());
        if (rec.queries.size() > 1)
            out << "rounds " << first << "-" << last << " (parallel):\n";
        else
            out << "round " << first << ":\n";
        for (const auto& q : rec.queries) {
            ++race_no;
            std::vector<int> horses = q;
            std::sort(horses.begin(), horses.end());
            out << "  race " << race_no << ":";
            for (int v : horses) out << ' ' << v + 1;
            out << "\n";
        }
        g.add_edges(rec.new_edges);
        const ReachSummary rs = reach_summary(g);
        for (int v = 0; v < n; ++v) {
            out << "  horse " << (v + 1 < 10 ? " " : "") << v + 1 << ": L="
                << rs.in_count[static_cast<std::size_t>(v)] << " W="
                << rs.out_count[static_cast<std::size_t>(v)];
            if (rs.kappa[static_cast<std::size_t>(v)] == n - 1) out << " (resolved)";
            out << "\n";
        }
    }
    out << "queries=" << demo.queries << " rounds=" << demo.rounds << " top=";
    for (std::size_t i = 0; i < demo.result.top.size(); ++i)
        out << (i ? "," : "") << demo.result.top[i] + 1;
    out << " inreach=";
    for (std::size_t i = 0; i < demo.result.top_inreach.size(); ++i)
        out << (i ? "," : "") << demo.result.top_inreach[i];
    out << "\n";
    demo.text = out.str();
    return demo;
}

} // namespace tourney
