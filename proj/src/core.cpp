#include "mcsp/core.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mcsp {

bool is_related(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  std::array<long long, 256> count{};
  for (unsigned char c : a) ++count[c];
  for (unsigned char c : b) --count[c];
  return std::all_of(count.begin(), count.end(), [](long long v) { return v == 0; });
}

Instance::Instance(std::string s1, std::string s2)
    : s1_(std::move(s1)), s2_(std::move(s2)) {
  if (s1_.empty()) throw ValidationError("instance strings must be non-empty");
  if (!is_related(s1_, s2_))
    throw ValidationError("instance strings are not related (symbol counts differ)");
  std::array<bool, 256> seen{};
  for (unsigned char c : s1_) seen[c] = true;
  for (int c = 0; c < 256; ++c)
    if (seen[c]) alphabet_.push_back(static_cast<char>(c));
}

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool printable_line(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isprint(c) && !std::isspace(c);
  });
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(strip_cr(line));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() != 2)
    throw InputError("instance file must contain exactly two lines, got " +
                     std::to_string(lines.size()));
  for (const auto& l : lines)
    if (l.empty() || !printable_line(l))
      throw InputError("instance lines must be non-empty printable strings without spaces");
  return Instance(lines[0], lines[1]);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write instance file: " + path.string());
  out << inst.s1() << '\n' << inst.s2() << '\n';
}

bool canonical_less(const CommonBlock& a, const CommonBlock& b) {
  if (a.len() != b.len()) return a.len() > b.len();
  if (a.k1 != b.k1) return a.k1 < b.k1;
  return a.k2 < b.k2;
}

bool block_consistent(const Instance& inst, const CommonBlock& b) {
  if (b.text.empty() || b.k1 < 1 || b.k2 < 1) return false;
  if (b.end1() > inst.n() || b.end2() > inst.n()) return false;
  return inst.s1().compare(static_cast<std::size_t>(b.k1) - 1, b.text.size(), b.text) == 0 &&
         inst.s2().compare(static_cast<std::size_t>(b.k2) - 1, b.text.size(), b.text) == 0;
}

BlockSet BlockSet::from_blocks(std::vector<CommonBlock> blocks) {
  std::sort(blocks.begin(), blocks.end(), canonical_less);
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  BlockSet set;
  set.blocks_ = std::move(blocks);
  return set;
}

BlockSet BlockSet::from_canonical(std::vector<CommonBlock> blocks) {
  BlockSet set;
  set.blocks_ = std::move(blocks);
  return set;
}

std::optional<std::size_t> BlockSet::find(const CommonBlock& b) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b, canonical_less);
  if (it != blocks_.end() && *it == b)
    return static_cast<std::size_t>(it - blocks_.begin());
  return std::nullopt;
}

Partition::Partition(int n)
    : n_(n),
      cover1_(static_cast<std::size_t>(n) + 1, 0),
      cover2_(static_cast<std::size_t>(n) + 1, 0) {}

bool Partition::can_place(const CommonBlock& b) const {
  if (b.k1 < 1 || b.k2 < 1 || b.end1() > n_ || b.end2() > n_) return false;
  for (int i = 0; i < b.len(); ++i)
    if (cover1_[static_cast<std::size_t>(b.k1 + i)] ||
        cover2_[static_cast<std::size_t>(b.k2 + i)])
      return false;
  return true;
}

bool Partition::try_place(int block_index, const CommonBlock& b) {
  if (!can_place(b)) return false;
  for (int i = 0; i < b.len(); ++i) {
    cover1_[static_cast<std::size_t>(b.k1 + i)] = 1;
    cover2_[static_cast<std::size_t>(b.k2 + i)] = 1;
  }
  covered_len_ += b.len();
  selected_.push_back(block_index);
  return true;
}

void Partition::place(int block_index, const CommonBlock& b) {
  if (!try_place(block_index, b))
    throw ValidationError("block (" + b.text + "," + std::to_string(b.k1) + "," +
                          std::to_string(b.k2) + ") overlaps the current selection");
}

void Partition::unplace_last(const CommonBlock& b) {
  for (int i = 0; i < b.len(); ++i) {
    cover1_[static_cast<std::size_t>(b.k1 + i)] = 0;
    cover2_[static_cast<std::size_t>(b.k2 + i)] = 0;
  }
  covered_len_ -= b.len();
  selected_.pop_back();
}

namespace {

std::string block_str(const CommonBlock& b) {
  return "(" + b.text + "," + std::to_string(b.k1) + "," + std::to_string(b.k2) + ")";
}

PartitionCheck check_blocks(const Instance& inst, const std::vector<CommonBlock>& blocks,
                            const std::vector<int>& indices) {
  PartitionCheck check{PartitionStatus::Invalid, "", Partition(inst.n())};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const CommonBlock& b = blocks[i];
    if (!block_consistent(inst, b)) {
      check.reason = "block " + block_str(b) + " does not match the instance";
      return check;
    }
    // Report which string the clash is in.
    for (int j = 0; j < b.len(); ++j) {
      if (check.partition.covered1(b.k1 + j)) {
        check.reason = "block " + block_str(b) + " overlaps in s1 at position " +
                       std::to_string(b.k1 + j);
        return check;
      }
    }
    for (int j = 0; j < b.len(); ++j) {
      if (check.partition.covered2(b.k2 + j)) {
        check.reason = "block " + block_str(b) + " overlaps in s2 at position " +
                       std::to_string(b.k2 + j);
        return check;
      }
    }
    check.partition.place(indices.empty() ? static_cast<int>(i) : indices[i], b);
  }
  check.status = check.partition.complete() ? PartitionStatus::Complete
                                            : PartitionStatus::Partial;
  return check;
}

}  // namespace

PartitionCheck validate_partition(const Instance& inst, const BlockSet& blocks,
                                  const std::vector<int>& selection) {
  std::vector<int> indices = selection;
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<CommonBlock> chosen;
  chosen.reserve(indices.size());
  for (int idx : indices) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= blocks.size())
      throw std::out_of_range("block index " + std::to_string(idx) +
                              " out of range for block set of size " +
                              std::to_string(blocks.size()));
    chosen.push_back(blocks[static_cast<std::size_t>(idx)]);
  }
  return check_blocks(inst, chosen, indices);
}

PartitionCheck validate_blocks(const Instance& inst,
                               const std::vector<CommonBlock>& blocks) {
  return check_blocks(inst, blocks, {});
}

std::vector<CommonBlock> selection_blocks(const BlockSet& blocks, const Partition& p) {
  std::vector<CommonBlock> out;
  out.reserve(p.selection().size());
  for (int idx : p.selection()) out.push_back(blocks[static_cast<std::size_t>(idx)]);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<CommonBlock> singleton_blocks(const Instance& inst) {
  std::vector<CommonBlock> out;
  out.reserve(static_cast<std::size_t>(inst.n()));
  std::vector<char> used(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (int k1 = 1; k1 <= inst.n(); ++k1) {
    for (int k2 = 1; k2 <= inst.n(); ++k2) {
      if (!used[static_cast<std::size_t>(k2)] && inst.s2_at(k2) == inst.s1_at(k1)) {
        used[static_cast<std::size_t>(k2)] = 1;
        out.push_back({std::string(1, inst.s1_at(k1)), k1, k2});
        break;
      }
    }
  }
  return out;
}

}  // namespace mcsp
