#include "mcsp/greedy.hpp"

#include "mcsp/blocks.hpp"

namespace mcsp {

Partition greedy_partition(const Instance& inst) {
  return greedy_partition(inst, enumerate_blocks(inst));
}

Partition greedy_partition(const Instance& inst, const BlockSet& blocks) {
  Partition p(inst.n());
  // Canonical order is exactly the greedy preference order, so each round
  // places the first still-placeable block.  The live list keeps only
  // blocks compatible with everything placed so far; it shrinks fast.
  std::vector<int> live(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) live[i] = static_cast<int>(i);
  while (!p.complete()) {
    std::vector<int> survivors;
    survivors.reserve(live.size());
    bool placed = false;
    for (int idx : live) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
      if (!placed) {
        if (p.try_place(idx, b)) placed = true;
      } else if (p.can_place(b)) {
        survivors.push_back(idx);
      }
    }
    if (!placed)
      throw ValidationError("greedy ran out of blocks; block set is not complete");
    live.swap(survivors);
  }
  return p;
}

}  // namespace mcsp
