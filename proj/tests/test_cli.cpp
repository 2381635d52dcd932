#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using std::string;

namespace {

string bin_dir() {
    char buf[4096];
    const ssize_t r = readlink("/proc/self/exe", buf, sizeof buf - 1);
    REQUIRE(r > 0);
    buf[r] = '\0';
    const string path(buf);
    return path.substr(0, path.rfind('/'));
}

string cli() { return bin_dir() + "/tourney"; }

struct RunOutput {
    int exit_code = -1;
    string out;
};

RunOutput run(const string& cmd) {
    RunOutput r;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

string temp_file(const string& tag, const string& content) {
    static int counter = 0;
    const string path = (std::filesystem::temp_directory_path() /
                         ("tourney_cli_" + tag + "_" + std::to_string(getpid()) + "_" +
                          std::to_string(counter++)))
                            .string();
    std::ofstream f(path);
    f << content;
    return path;
}

string identity_perm_file(int n) {
    std::ostringstream s;
    s << "n " << n << "\nperm";
    for (int i = 0; i < n; ++i) s << ' ' << i;
    s << "\n";
    return temp_file("perm", s.str());
}

} // namespace

TEST_CASE("solve on the identity instance") {
    const string file = identity_perm_file(25);
    const RunOutput r = run(cli() + " solve --input " + file + " --k 5 --m 3 --batch");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("queries=7") != string::npos);
    CHECK(r.out.find("top=0,1,2") != string::npos);
    CHECK(r.out.find("inreach=0,1,2") != string::npos);

    const RunOutput j = run(cli() + " solve --input " + file + " --k 5 --m 3 --batch --json");
    CHECK(j.exit_code == 0);
    CHECK(j.out.find("\"queries\":7") != string::npos);
    std::filesystem::remove(file);
}

TEST_CASE("solve usage and format errors") {
    const string file = identity_perm_file(5);
    CHECK(run(cli() + " solve --input " + file + " --k 3 --m 0").exit_code == 1);
    CHECK(run(cli() + " solve --input " + file + " --k 3 --m 2 --algorithm nosuch").exit_code == 1);
    CHECK(run(cli() + " solve --input " + file + " --k 3 --m 2 --unknown-flag").exit_code == 1);
    CHECK(run(cli() + " solve --input /nonexistent --k 3 --m 1").exit_code == 2);
    const string bad = temp_file("bad", "n 2\ne 0 1\ne 1 0\n");
    CHECK(run(cli() + " solve --input " + bad + " --k 2 --m 1").exit_code == 2);
    std::filesystem::remove(file);
    std::filesystem::remove(bad);
}

TEST_CASE("solve on a cycle emits the tie note") {
    const string file = temp_file("cycle", "n 3\ne 0 1\ne 1 2\ne 2 0\n");
    const RunOutput r = run(cli() + " solve --input " + file + " --k 3 --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("note:") != string::npos);

    // a transitive algorithm pointed at a cyclic truth is an oracle-level error
    CHECK(run(cli() + " solve --input " + file + " --k 3 --m 1 --algorithm transitive")
              .exit_code == 3);
    std::filesystem::remove(file);
}

TEST_CASE("horses demo is deterministic and matches the fixture") {
    const RunOutput a = run(cli() + " horses");
    const RunOutput b = run(cli() + " horses");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("queries=7 rounds=3 top=1,2,3") != string::npos);
    CHECK(a.out.find("horse  1: L=0 W=24 (resolved)") != string::npos);
}

TEST_CASE("bench writes the pinned CSV header") {
    const string out = temp_file("bench", "");
    const string summary = temp_file("bench_summary", "");
    const RunOutput r = run(cli() + " bench --n 20 --k 4 --seeds 2 --out " + out + " --summary " +
                            summary);
    CHECK(r.exit_code == 0);
    std::ifstream csv(out);
    string header;
    std::getline(csv, header);
    CHECK(header == "n,k,seed,m,queries,bound,ratio");
    int rows = 0;
    string line;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 40); // 2 seeds x 20 m values
    std::ifstream sums(summary);
    std::getline(sums, header);
    CHECK(header == "n,k,m,median,p10,p90,max,bound");
    std::filesystem::remove(out);
    std::filesystem::remove(summary);
}

TEST_CASE("bench hard ceiling controls the exit code") {
    const string out = temp_file("bench_hc", "");
    // an impossible ceiling forces the breach path
    const RunOutput r =
        run(cli() + " bench --n 15 --k 3 --seeds 2 --out " + out + " --hard-ceiling 0.5");
    CHECK(r.exit_code == 5);
    std::filesystem::remove(out);
}

TEST_CASE("verify accepts a fresh trace and rejects a tampered one") {
    const string file = identity_perm_file(12);
    const string trace = temp_file("trace", "");
    CHECK(run(cli() + " solve --input " + file + " --k 4 --m 3 --trace " + trace).exit_code == 0);
    const RunOutput ok = run(cli() + " verify --trace " + trace + " --ground-truth " + file);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("verify: OK") != string::npos);

    std::ifstream in(trace);
    std::stringstream buf;
    buf << in.rdbuf();
    string doc = buf.str();
    // flip the first revealed edge against the ground truth
    const auto pos = doc.find("\"new_edges\":[[");
    REQUIRE(pos != string::npos);
    const auto comma = doc.find(',', pos + 14);
    const auto close = doc.find(']', pos + 14);
    const string a = doc.substr(pos + 14, comma - pos - 14);
    const string b = doc.substr(comma + 1, close - comma - 1);
    doc.replace(pos + 14, close - pos - 14, b + "," + a);
    const string tampered = temp_file("tampered", doc);

    const RunOutput bad = run(cli() + " verify --trace " + tampered + " --ground-truth " + file);
    CHECK(bad.exit_code == 6);
    CHECK(bad.out.find("verify: FAIL") != string::npos);
    std::filesystem::remove(file);
    std::filesystem::remove(trace);
    std::filesystem::remove(tampered);
}

TEST_CASE("rerank records and replays through the CLI") {
    std::ostringstream docs;
    for (int i = 0; i < 8; ++i)
        docs << R"({"doc_id":"d)" << i << R"(","text":"body )" << i << R"(","score":)"
             << (8 - i) * 0.5 << "}\n";
    const string cand = temp_file("cands", docs.str());
    const string out1 = temp_file("rr1", "");
    const string out2 = temp_file("rr2", "");
    const string log = temp_file("rrlog", "");

    const string oracle_cmd = "'" + bin_dir() + "/perm_oracle' --perm 7,6,5,4,3,2,1,0";
    const RunOutput rec = run(cli() + " rerank --candidates " + cand +
                              " --query 'which doc' --oracle-cmd \"" + oracle_cmd +
                              "\" --k 3 --m 4 --record " + log + " --out " + out1);
    CHECK(rec.exit_code == 0);
    CHECK(rec.out.find("oracle_calls=") != string::npos);

    const RunOutput rep = run(cli() + " rerank --candidates " + cand +
                              " --query 'which doc' --replay " + log + " --k 3 --m 4 --out " +
                              out2);
    CHECK(rep.exit_code == 0);

    std::ifstream f1(out1), f2(out2);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    CHECK(b1.str().find("\"doc_id\":\"d7\"") != string::npos);

    for (const string& p : {cand, out1, out2, log}) std::filesystem::remove(p);
}

TEST_CASE("rerank surfaces oracle protocol failures with exit 3") {
    const string cand = temp_file("cands3", R"({"doc_id":"a","text":"x","score":1}
{"doc_id":"b","text":"y","score":0.5}
)");
    const string out = temp_file("rr3", "");
    const RunOutput r = run(cli() + " rerank --candidates " + cand +
                            " --query q --oracle-cmd cat --k 2 --m 1 --out " + out);
    CHECK(r.exit_code == 3);
    std::filesystem::remove(cand);
    std::filesystem::remove(out);
}
