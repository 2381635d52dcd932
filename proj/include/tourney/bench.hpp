#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tourney {

/// Query-complexity experiment grid. Every (n, k, seed) cell runs the
/// canonical dagger schedule sequentially on a fresh random total order with
/// m = n, so one run yields the whole T_1..T_n curve.
struct GridConfig {
    std::vector<int> n_values{100, 200};
    std::vector<int> k_values{5, 10, 20};
    int seeds = 20;
    std::uint64_t rng_seed_base = 0x746f75726e6579ULL; // fixed project constant
};

struct BenchRecord {
    int n = 0;
    int k = 0;
    int seed = 0;
    std::vector<int> T;        // T[m-1] = oracle calls until top-m resolved
    std::vector<double> bound; // bound[m-1] = B(n,k,m)
    double ratio_max = 0.0;    // max over m of T_m / B(n,k,m)
};

/// Reference curve B(n,k,m) = ceil((n-1)/(k-1)) + ((m-1)/(k-1)) * (1 + log_k m).
double conjectured_bound(int n, int k, int m);

/// Runs the grid; `threads` <= 0 picks the hardware count capped by the
/// TOURNEY_THREADS environment variable. Output is ordered by (n, k, seed)
/// regardless of scheduling.
std::vector<BenchRecord> run_grid(const GridConfig& cfg, int threads = 0);

struct SummaryRow {
    int n = 0;
    int k = 0;
    int m = 0;
    double median = 0.0;
    double p10 = 0.0;
    double p90 = 0.0;
    int max = 0;
    double bound = 0.0;
};

/// Per-(n,k,m) order statistics with linearly interpolated percentiles.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

/// CSV, header `n,k,seed,m,queries,bound,ratio`, one row per (record, m).
void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// CSV, header `n,k,m,median,p10,p90,max,bound`.
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

} // namespace tourney
