#pragma once

// The two parametrized example families used throughout the tests and the
// `examples` command.

#include "graphk/graph.hpp"

#include <cstdint>

namespace graphk {

/// Four vertices, v1 a sink:
///   [[0,0,0,0],[x,1,1,0],[y,1,1,1],[z,0,1,1]]
Graph family_E(std::uint64_t x, std::uint64_t y, std::uint64_t z);

/// Three vertices, v3 an infinite emitter into v1:
///   [[0,0,0],[y,3,1],[inf,z,3]]
Graph family_F(std::uint64_t y, std::uint64_t z);

/// ({v1}, ∅) for family_E, ({v1}, {v3}) for family_F.
AdmissiblePair family_E_pair();
AdmissiblePair family_F_pair();

}  // namespace graphk
