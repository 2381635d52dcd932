#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tourney/oracle.hpp"

namespace tourney {

/// Oracle backed by a child process speaking line-delimited JSON on
/// stdin/stdout, one object per line:
///
///   request:  {"type":"query","id":<u64>,"items":[...],"payloads":{"<id>":"<text>",...}?}
///   response: {"type":"result","id":<u64>,"order":[...]} or
///             {"type":"result","id":<u64>,"edges":[[winner,loser],...]}
///   shutdown: {"type":"shutdown"}
///
/// An order reply must be a permutation of the queried items and expands to
/// all implied pairs; an edges reply may be partial or cyclic. Timeouts and
/// child death respawn the process and resend, up to `retries` extra
/// attempts, then fail with oracle_timeout. Contract violations (malformed
/// line, wrong id, bad order) fail immediately with protocol_error.
///
/// Requests are serialized: one in-flight query per child. Instantiation
/// ignores SIGPIPE process-wide so a dying child surfaces as a write error
/// instead of killing the host.
class ExternalOracle : public Oracle {
public:
    ExternalOracle(std::vector<std::string> command, int k, int timeout_ms = 30000,
                   int retries = 2);
    ~ExternalOracle() override;

    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

    OracleResponse query(const OracleQuery& q) override;
    int max_query_size() const override { return k_; }

    /// Texts attached to vertex ids; the slice covering each query's items
    /// rides along in the request.
    void set_payloads(const std::map<int, std::string>& payloads) override {
        payloads_ = payloads;
    }

private:
    void spawn();
    void kill_child();
    bool send_line(const std::string& line);
    bool read_line(std::string& line); // false on timeout/EOF
    OracleResponse parse_response(const std::string& line, const OracleQuery& q,
                                  std::uint64_t id) const;

    std::vector<std::string> command_;
    int k_;
    int timeout_ms_;
    int retries_;
    std::map<int, std::string> payloads_;

    long pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
    std::uint64_t next_id_ = 1;
};

} // namespace tourney
