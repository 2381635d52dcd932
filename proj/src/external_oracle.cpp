#include "tourney/external_oracle.hpp"

#include <csignal>
#include <cstring>
#include <chrono>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace tourney {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    return left < 0 ? 0 : static_cast<int>(left);
}

} // namespace

ExternalOracle::ExternalOracle(std::vector<std::string> command, int k, int timeout_ms,
                               int retries)
    : command_(std::move(command)), k_(k), timeout_ms_(timeout_ms), retries_(retries) {
    if (command_.empty()) raise(Errc::invalid_input, "empty oracle command");
    if (k_ < 2) raise(Errc::invalid_input, "k must be >= 2");
    std::signal(SIGPIPE, SIG_IGN);
}

ExternalOracle::~ExternalOracle() {
    if (pid_ > 0) {
        send_line(R"({"type":"shutdown"})");
        if (to_child_ >= 0) close(to_child_);
        to_child_ = -1;
        // Give the child a moment to exit on its own, then force it.
        for (int i = 0; i < 50; ++i) {
            int status = 0;
            if (waitpid(static_cast<pid_t>(pid_), &status, WNOHANG) != 0) {
                pid_ = -1;
                break;
            }
            usleep(2000);
        }
        if (pid_ > 0) {
            ::kill(static_cast<pid_t>(pid_), SIGKILL);
            waitpid(static_cast<pid_t>(pid_), nullptr, 0);
        }
    }
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
}

void ExternalOracle::spawn() {
    kill_child();
    int in_pipe[2];  // parent -> child
    int out_pipe[2]; // child -> parent
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        raise(Errc::internal_error, "pipe() failed");
    const pid_t pid = fork();
    if (pid < 0) raise(Errc::internal_error, "fork() failed");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        std::vector<char*> argv;
        argv.reserve(command_.size() + 1);
        for (auto& a : command_) argv.push_back(a.data());
        argv.push_back(nullptr);
        execvp(argv[0], argv.data());
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    buffer_.clear();
}

void ExternalOracle::kill_child() {
    if (pid_ > 0) {
        ::kill(static_cast<pid_t>(pid_), SIGKILL);
        waitpid(static_cast<pid_t>(pid_), nullptr, 0);
        pid_ = -1;
    }
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = -1;
    from_child_ = -1;
    buffer_.clear();
}

bool ExternalOracle::send_line(const std::string& line) {
    if (to_child_ < 0) return false;
    std::string data = line;
    data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t w = write(to_child_, data.data() + off, data.size() - off);
        if (w < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        off += static_cast<std::size_t>(w);
    }
    return true;
}

bool ExternalOracle::read_line(std::string& line) {
    const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms_);
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return true;
        }
        struct pollfd pfd{from_child_, POLLIN, 0};
        const int pr = poll(&pfd, 1, remaining_ms(deadline));
        if (pr == 0) return false; // timeout
        if (pr < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        char chunk[4096];
        const ssize_t r = read(from_child_, chunk, sizeof chunk);
        if (r <= 0) return false; // EOF or error: child is gone
        buffer_.append(chunk, static_cast<std::size_t>(r));
    }
}

OracleResponse ExternalOracle::parse_response(const std::string& line, const OracleQuery& q,
                                              std::uint64_t id) const {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::protocol_error, std::string("unparseable response line: ") + e.what());
    }
    if (!j.is_object() || j.value("type", "") != "result")
        raise(Errc::protocol_error, "response is not a result object");
    if (!j.contains("id") || j["id"].get<std::uint64_t>() != id)
        raise(Errc::protocol_error, "response id does not echo the request");
    const bool has_order = j.contains("order");
    const bool has_edges = j.contains("edges");
    if (has_order == has_edges)
        raise(Errc::protocol_error, "response must carry exactly one of order/edges");

    std::vector<int> items_sorted = q.items;
    std::sort(items_sorted.begin(), items_sorted.end());
    const auto in_query = [&](int v) {
        return std::binary_search(items_sorted.begin(), items_sorted.end(), v);
    };

    OracleResponse out;
    if (has_order) {
        std::vector<int> order;
        try {
            order = j["order"].get<std::vector<int>>();
        } catch (const nlohmann::json::exception&) {
            raise(Errc::protocol_error, "order is not an integer array");
        }
        std::vector<int> check = order;
        std::sort(check.begin(), check.end());
        if (check != items_sorted)
            raise(Errc::protocol_error, "order is not a permutation of the queried items");
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t l = i + 1; l < order.size(); ++l)
                out.edges.emplace_back(order[i], order[l]);
        return out;
    }
    if (!j["edges"].is_array())
        raise(Errc::protocol_error, "edges is not an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            raise(Errc::protocol_error, "edge entries must be [winner,loser] pairs");
        const int w = e[0].get<int>(), l = e[1].get<int>();
        if (w == l || !in_query(w) || !in_query(l))
            raise(Errc::protocol_error, "edge endpoints must be distinct queried items");
        out.edges.emplace_back(w, l);
    }
    return out;
}

OracleResponse ExternalOracle::query(const OracleQuery& q) {
    validate_query(q, k_, -1);
    for (int attempt = 0; attempt <= retries_; ++attempt) {
        if (pid_ <= 0) spawn();
        const std::uint64_t id = next_id_++;
        nlohmann::json req;
        req["type"] = "query";
        req["id"] = id;
        req["items"] = q.items;
        if (!payloads_.empty()) {
            nlohmann::json p = nlohmann::json::object();
            for (int v : q.items) {
                const auto it = payloads_.find(v);
                if (it != payloads_.end()) p[std::to_string(v)] = it->second;
            }
            if (!p.empty()) req["payloads"] = std::move(p);
        }
        if (!send_line(req.dump())) {
            kill_child();
            continue;
        }
        std::string line;
        if (!read_line(line)) {
            kill_child();
            continue;
        }
        return parse_response(line, q, id);
    }
    raise(Errc::oracle_timeout,
          "no response after " + std::to_string(retries_ + 1) + " attempts");
}

} // namespace tourney
