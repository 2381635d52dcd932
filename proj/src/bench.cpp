#include "tourney/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "tourney/error.hpp"
#include "tourney/oracle.hpp"
#include "tourney/rng.hpp"
#include "tourney/scheduler.hpp"

namespace tourney {

double conjectured_bound(int n, int k, int m) {
    if (n < 2 || k < 2 || m < 1 || m > n)
        raise(Errc::invalid_input, "bound requires n >= 2, k >= 2, 1 <= m <= n");
    const double reduction = std::ceil(static_cast<double>(n - 1) / static_cast<double>(k - 1));
    if (m == 1) return reduction;
    const double refinement = (static_cast<double>(m - 1) / static_cast<double>(k - 1)) *
                              (1.0 + std::log(static_cast<double>(m)) / std::log(static_cast<double>(k)));
    return reduction + refinement;
}

namespace {

BenchRecord run_cell(std::uint64_t base, int n, int k, int seed) {
    SplitMix64 rng(mix_seed(base, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(seed)));
    const std::vector<int> perm = random_permutation(n, rng);
    PermutationOracle oracle(perm, k);

    RunOptions opts;
    opts.k = k;
    opts.m = n;
    opts.tie_break = TieBreakPolicy::dagger;
    opts.batch = false;
    opts.checkpoint_all_m = true;
    const RunResult result = blitzrank(n, oracle, opts);

    BenchRecord rec;
    rec.n = n;
    rec.k = k;
    rec.seed = seed;
    rec.T = extract_checkpoints(result.trace);
    rec.bound.reserve(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) {
        const double b = conjectured_bound(n, k, m);
        rec.bound.push_back(b);
        rec.ratio_max = std::max(rec.ratio_max, rec.T[static_cast<std::size_t>(m - 1)] / b);
    }
    return rec;
}

int effective_threads(int requested) {
    int t = requested;
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t <= 0) t = 1;
    if (const char* cap = std::getenv("TOURNEY_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) t = std::min(t, c);
    }
    return t;
}

} // namespace

std::vector<BenchRecord> run_grid(const GridConfig& cfg, int threads) {
    if (cfg.seeds < 1) raise(Errc::invalid_input, "seeds must be >= 1");
    for (int n : cfg.n_values)
        if (n < 2) raise(Errc::invalid_input, "grid n must be >= 2");
    for (int k : cfg.k_values)
        if (k < 2) raise(Errc::invalid_input, "grid k must be >= 2");

    struct Cell {
        int n, k, seed;
    };
    std::vector<Cell> cells;
    for (int n : cfg.n_values)
        for (int k : cfg.k_values)
            for (int seed = 0; seed < cfg.seeds; ++seed) cells.push_back({n, k, seed});

    std::vector<BenchRecord> records(cells.size());
    const int nthreads = std::min<int>(effective_threads(threads), static_cast<int>(cells.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& c = cells[i];
            records[i] = run_cell(cfg.rng_seed_base, c.n, c.k, c.seed);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return records;
}

namespace {

double quantile(const std::vector<int>& sorted, double p) {
    if (sorted.empty()) raise(Errc::invalid_input, "empty group");
    if (sorted.size() == 1) return sorted.front();
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return static_cast<double>(sorted[lo]) * (1.0 - frac) + static_cast<double>(sorted[hi]) * frac;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
    if (records.empty()) raise(Errc::invalid_input, "no records to summarize");
    // group by (n, k); records for a pair must share the same n (and thus m range)
    std::vector<std::pair<int, int>> keys;
    for (const auto& r : records) {
        const std::pair<int, int> key{r.n, r.k};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());

    std::vector<SummaryRow> rows;
    for (const auto& [n, k] : keys) {
        for (int m = 1; m <= n; ++m) {
            std::vector<int> values;
            for (const auto& r : records)
                if (r.n == n && r.k == k) values.push_back(r.T[static_cast<std::size_t>(m - 1)]);
            std::sort(values.begin(), values.end());
            SummaryRow row;
            row.n = n;
            row.k = k;
            row.m = m;
            row.median = quantile(values, 0.5);
            row.p10 = quantile(values, 0.1);
            row.p90 = quantile(values, 0.9);
            row.max = values.back();
            row.bound = conjectured_bound(n, k, m);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "n,k,seed,m,queries,bound,ratio\n";
    for (const auto& r : records)
        for (int m = 1; m <= r.n; ++m) {
            const int q = r.T[static_cast<std::size_t>(m - 1)];
            const double b = r.bound[static_cast<std::size_t>(m - 1)];
            out << r.n << ',' << r.k << ',' << r.seed << ',' << m << ',' << q << ','
                << fixed6(b) << ',' << fixed6(q / b) << "\n";
        }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "n,k,m,median,p10,p90,max,bound\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.k << ',' << r.m << ',' << fixed6(r.median) << ',' << fixed6(r.p10)
            << ',' << fixed6(r.p90) << ',' << r.max << ',' << fixed6(r.bound) << "\n";
}

} // namespace tourney
