#pragma once

// Common block enumeration and block set utilities.
//
// enumerate_blocks lists every common block of an instance: every triple
// (t, k1, k2) such that t occurs in s1 at k1 and in s2 at k2.  The
// enumeration runs a backward common-extension scan over all position
// pairs, which is O(n^2) time plus output size.  For uniform random
// strings over a 4-letter alphabet the output grows like n^2/3.

#include <cstddef>
#include <map>
#include <string>

#include "mcsp/core.hpp"

namespace mcsp {

// All common blocks in canonical order.
BlockSet enumerate_blocks(const Instance& inst);

// Blocks of length >= min_len; throws ValidationError if min_len < 1.
BlockSet filter_min_length(const BlockSet& blocks, int min_len);

// Length of the longest block; throws ValidationError on an empty set.
int max_block_length(const BlockSet& blocks);

// Blocks placeable on top of the given partial selection.
BlockSet compatible_blocks(const BlockSet& blocks, const Partition& partial);

struct LengthHistogram {
  std::map<int, std::size_t> counts;  // length -> number of blocks
  std::size_t total = 0;

  double fraction(int len) const;
};

LengthHistogram length_histogram(const BlockSet& blocks);

// One block per line: text, k1 and k2 separated by tabs.
std::string dump_blocks(const BlockSet& blocks);
std::vector<CommonBlock> parse_block_list(const std::string& text);

// CSV with a length,count header, rows sorted by length.
std::string histogram_csv(const LengthHistogram& hist);

}  // namespace mcsp
