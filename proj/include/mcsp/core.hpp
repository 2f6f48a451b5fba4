#pragma once

// Core types for the minimum common string partition solver.
//
// An instance is a pair of related strings s1, s2 (same multiset of
// symbols).  A common block is a substring together with one occurrence
// position in each string.  A solution is a set of non-overlapping common
// blocks covering both strings completely; its size is the objective.
//
// All positions in the public interface are 1-based, matching the usual
// mathematical description of the problem.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcsp/errors.hpp"

namespace mcsp {

// True iff a and b have the same length and the same symbol counts.
bool is_related(std::string_view a, std::string_view b);

class Instance {
 public:
  // Throws ValidationError if the strings are empty or not related.
  Instance(std::string s1, std::string s2);

  const std::string& s1() const { return s1_; }
  const std::string& s2() const { return s2_; }
  int n() const { return static_cast<int>(s1_.size()); }

  // Symbols occurring in the instance, sorted ascending.
  const std::string& alphabet() const { return alphabet_; }

  // 1-based access.
  char s1_at(int k) const { return s1_[static_cast<std::size_t>(k) - 1]; }
  char s2_at(int k) const { return s2_[static_cast<std::size_t>(k) - 1]; }

 private:
  std::string s1_, s2_;
  std::string alphabet_;
};

// Instance file format: two lines, one string per line, trailing newline
// optional.  Parse errors raise InputError, relatedness failures
// ValidationError.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

struct CommonBlock {
  std::string text;
  int k1 = 0;  // 1-based start in s1
  int k2 = 0;  // 1-based start in s2

  int len() const { return static_cast<int>(text.size()); }
  int end1() const { return k1 + len() - 1; }  // inclusive
  int end2() const { return k2 + len() - 1; }

  friend bool operator==(const CommonBlock&, const CommonBlock&) = default;
};

// Canonical order: descending length, then ascending k1, then ascending k2.
bool canonical_less(const CommonBlock& a, const CommonBlock& b);

// True iff b.text actually occurs in s1 at k1 and in s2 at k2.
bool block_consistent(const Instance& inst, const CommonBlock& b);

// An immutable list of distinct common blocks in canonical order.
class BlockSet {
 public:
  BlockSet() = default;

  // Sorts canonically and drops duplicates.
  static BlockSet from_blocks(std::vector<CommonBlock> blocks);

  // Trusted constructor: input must already be canonical and distinct.
  static BlockSet from_canonical(std::vector<CommonBlock> blocks);

  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const CommonBlock& operator[](std::size_t i) const { return blocks_[i]; }
  const std::vector<CommonBlock>& blocks() const { return blocks_; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  std::optional<std::size_t> find(const CommonBlock& b) const;

 private:
  std::vector<CommonBlock> blocks_;
};

// A (possibly partial) selection of pairwise non-overlapping blocks,
// tracked as cover masks over both strings.  Block indices refer to some
// external block list; the partition only stores them for reporting.
class Partition {
 public:
  explicit Partition(int n);

  int n() const { return n_; }
  int covered_len() const { return covered_len_; }
  bool complete() const { return covered_len_ == n_; }
  std::size_t size() const { return selected_.size(); }

  bool covered1(int pos) const { return cover1_[static_cast<std::size_t>(pos)] != 0; }
  bool covered2(int pos) const { return cover2_[static_cast<std::size_t>(pos)] != 0; }

  // True iff b fits inside the string bounds and overlaps nothing placed.
  bool can_place(const CommonBlock& b) const;

  // Places b if possible, recording block_index; returns false on conflict.
  bool try_place(int block_index, const CommonBlock& b);

  // Like try_place but throws ValidationError on conflict.
  void place(int block_index, const CommonBlock& b);

  // Reverts the most recent placement; b must match it.
  void unplace_last(const CommonBlock& b);

  // Indices in placement order.
  const std::vector<int>& selection() const { return selected_; }

 private:
  int n_ = 0;
  int covered_len_ = 0;
  std::vector<char> cover1_, cover2_;  // size n + 1, slot 0 unused
  std::vector<int> selected_;
};

enum class PartitionStatus { Complete, Partial, Invalid };

struct PartitionCheck {
  PartitionStatus status = PartitionStatus::Invalid;
  std::string reason;   // set only for Invalid
  Partition partition;  // placements up to the first violation

  bool ok() const { return status != PartitionStatus::Invalid; }
};

// Checks a selection of block indices against an instance.  Indices are
// de-duplicated; an out-of-range index throws std::out_of_range.  Violations
// are reported in order: block/instance mismatch, overlap in s1, overlap in
// s2.  A valid selection is Complete when both strings are fully covered.
PartitionCheck validate_partition(const Instance& inst, const BlockSet& blocks,
                                  const std::vector<int>& selection);

// Same check for an ad-hoc list of blocks.
PartitionCheck validate_blocks(const Instance& inst,
                               const std::vector<CommonBlock>& blocks);

// The trivial solution: each s1 position matched greedily to the leftmost
// unused s2 position holding the same symbol.  Always n blocks of length 1.
std::vector<CommonBlock> singleton_blocks(const Instance& inst);

// Triples of a partition's selection, canonical order.
std::vector<CommonBlock> selection_blocks(const BlockSet& blocks, const Partition& p);

}  // namespace mcsp
