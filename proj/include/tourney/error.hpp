#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

enum class Errc {
    invalid_size,
    invalid_edge,
    contradictory_edge,
    invalid_input,
    invalid_tournament,
    query_too_small,
    query_too_large,
    protocol_error,
    oracle_timeout,
    replay_miss,
    stalled_oracle,
    not_transitive,
    invalid_trace,
    invalid_request,
    format_error,
    internal_error,
};

const char* errc_name(Errc c);

/// Single exception type for the whole library; tests and the CLI dispatch
/// on code() rather than parsing messages.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace tourney
