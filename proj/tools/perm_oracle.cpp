// Scripted comparison oracle speaking the line-delimited JSON protocol on
// stdin/stdout. Orders items by a hidden permutation; useful as a stand-in
// for an LLM judge in demos and as a misbehaving child in protocol tests.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tourney/rng.hpp"

namespace {

struct Options {
    std::string perm_csv;
    int n = 0;
    std::uint64_t seed = 0;
    bool edges_mode = false;
    std::string cycle_csv;     // "a,b,c": orient a>b, b>c, c>a (forces edges mode)
    bool bad_json = false;     // reply with an unparseable line
    bool drop_first = false;   // omit one item from order replies
    bool empty_edges = false;  // reply {"edges":[]}
    int sleep_ms = 0;          // delay before every reply
    std::string crash_file;    // crash before first reply unless this file exists
    std::string dump_path;     // append raw request lines here
};

std::vector<int> parse_csv(const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"hidden-permutation oracle child"};
    app.add_option("--perm", opt.perm_csv, "hidden order, best first, comma separated");
    app.add_option("--n", opt.n, "derive the hidden order for n items");
    app.add_option("--seed", opt.seed, "seed for --n");
    app.add_flag("--edges", opt.edges_mode, "reply with explicit edge lists");
    app.add_option("--cycle", opt.cycle_csv, "three ids to orient as a cycle");
    app.add_flag("--bad-json", opt.bad_json, "testing: emit an unparseable reply");
    app.add_flag("--drop-first-item", opt.drop_first, "testing: truncate order replies");
    app.add_flag("--empty-edges", opt.empty_edges, "testing: reply with no edges");
    app.add_option("--sleep-ms", opt.sleep_ms, "testing: delay every reply");
    app.add_option("--crash-file", opt.crash_file, "testing: die once, marked by this file");
    app.add_option("--dump", opt.dump_path, "testing: append request lines to a file");
    CLI11_PARSE(app, argc, argv);

    std::vector<int> position; // vertex -> rank
    {
        std::vector<int> perm;
        if (!opt.perm_csv.empty()) {
            perm = parse_csv(opt.perm_csv);
        } else if (opt.n > 0) {
            tourney::SplitMix64 rng(opt.seed);
            perm = tourney::random_permutation(opt.n, rng);
        }
        int max_id = -1;
        for (int v : perm) max_id = std::max(max_id, v);
        position.assign(static_cast<std::size_t>(max_id + 1), -1);
        for (std::size_t i = 0; i < perm.size(); ++i)
            position[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    }
    const std::vector<int> cycle = opt.cycle_csv.empty() ? std::vector<int>{} : parse_csv(opt.cycle_csv);
    const bool use_edges = opt.edges_mode || !cycle.empty() || opt.empty_edges;

    // ids outside the hidden order sort last, by id, so stray items stay
    // deterministic instead of crashing the child
    const auto pos = [&](int v) {
        if (v >= 0 && v < static_cast<int>(position.size()) && position[static_cast<std::size_t>(v)] >= 0)
            return position[static_cast<std::size_t>(v)];
        return static_cast<int>(position.size()) + v;
    };
    const auto better = [&](int u, int v) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
            if (u == a && v == b) return true;
            if (u == b && v == a) return false;
        }
        return pos(u) < pos(v);
    };

    std::string line;
    while (std::getline(std::cin, line)) {
        if (!opt.dump_path.empty()) {
            std::ofstream dump(opt.dump_path, std::ios::app);
            dump << line << "\n";
        }
        nlohmann::json req;
        try {
            req = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        const std::string type = req.value("type", "");
        if (type == "shutdown") return 0;
        if (type != "query") continue;

        if (!opt.crash_file.empty() && !std::filesystem::exists(opt.crash_file)) {
            std::ofstream marker(opt.crash_file);
            return 1;
        }
        if (opt.sleep_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(opt.sleep_ms));
        if (opt.bad_json) {
            std::cout << "this is not json\n" << std::flush;
            continue;
        }

        const auto items = req.at("items").get<std::vector<int>>();
        nlohmann::json resp;
        resp["type"] = "result";
        resp["id"] = req.at("id");
        if (use_edges) {
            auto& edges = resp["edges"] = nlohmann::json::array();
            if (!opt.empty_edges)
                for (std::size_t i = 0; i < items.size(); ++i)
                    for (std::size_t j = i + 1; j < items.size(); ++j) {
                        const int u = items[i], v = items[j];
                        if (better(u, v))
                            edges.push_back({u, v});
                        else
                            edges.push_back({v, u});
                    }
        } else {
            std::vector<int> order = items;
            std::sort(order.begin(), order.end(),
                      [&](int u, int v) { return better(u, v); });
            if (opt.drop_first && !order.empty()) order.erase(order.begin());
            resp["order"] = order;
        }
        std::cout << resp.dump() << "\n" << std::flush;
    }
    return 0;
}
