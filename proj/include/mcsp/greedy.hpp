#pragma once

// Greedy baseline: repeatedly place the longest common block compatible
// with the current partial selection, ties broken by ascending k1 then
// ascending k2, until both strings are covered.  Always terminates with a
// complete partition because singleton blocks remain available.

#include "mcsp/core.hpp"

namespace mcsp {

// Indices of the returned partition refer to enumerate_blocks(inst).
Partition greedy_partition(const Instance& inst);

// Same, over a precomputed complete block set (avoids re-enumeration).
Partition greedy_partition(const Instance& inst, const BlockSet& blocks);

}  // namespace mcsp
