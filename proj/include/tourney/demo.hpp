#pragma once

#include <string>

#include "tourney/scheduler.hpp"

namespace tourney {

/// The bundled 25-horses instance: 25 candidates, 5 per race, fastest 3
/// wanted, identity ground truth, batch schedule. Horses print 1-based.
struct HorsesDemo {
    RunResult result;
    std::uint64_t queries = 0;
    std::size_t rounds = 0;
    std::string text; // round-by-round table with L/W per horse and resolved marks
};

HorsesDemo horses_demo();

} // namespace tourney
