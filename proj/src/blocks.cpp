#include "mcsp/blocks.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mcsp {

BlockSet enumerate_blocks(const Instance& inst) {
  const std::string& s1 = inst.s1();
  const std::string& s2 = inst.s2();
  const std::size_t n = s1.size();

  // ext[j] for the current row i: length of the common extension of
  // s1[i..] and s2[j..].  Rows are processed bottom-up; scanning i and j
  // in descending order fills each length bucket in reverse canonical
  // order, so one reverse per bucket restores (k1, k2) ascending.
  std::vector<int> cur(n + 1, 0), next(n + 1, 0);
  std::vector<std::vector<std::pair<int, int>>> starts(n + 1);

  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      int e = (s1[i] == s2[j]) ? next[j + 1] + 1 : 0;
      cur[j] = e;
      for (int len = e; len >= 1; --len)
        starts[static_cast<std::size_t>(len)].emplace_back(static_cast<int>(i) + 1,
                                                           static_cast<int>(j) + 1);
    }
    std::swap(cur, next);
  }

  std::size_t total = 0;
  for (const auto& bucket : starts) total += bucket.size();

  std::vector<CommonBlock> blocks;
  blocks.reserve(total);
  for (std::size_t len = n; len >= 1; --len) {
    auto& bucket = starts[len];
    std::reverse(bucket.begin(), bucket.end());
    for (auto [k1, k2] : bucket)
      blocks.push_back({s1.substr(static_cast<std::size_t>(k1) - 1, len), k1, k2});
    bucket.clear();
    bucket.shrink_to_fit();
  }
  return BlockSet::from_canonical(std::move(blocks));
}

BlockSet filter_min_length(const BlockSet& blocks, int min_len) {
  if (min_len < 1)
    throw ValidationError("minimum block length must be >= 1, got " +
                          std::to_string(min_len));
  std::vector<CommonBlock> kept;
  for (const CommonBlock& b : blocks)
    if (b.len() >= min_len) kept.push_back(b);
  return BlockSet::from_canonical(std::move(kept));
}

int max_block_length(const BlockSet& blocks) {
  if (blocks.empty())
    throw ValidationError("empty block set has no maximum block length");
  return blocks[0].len();  // canonical order starts with the longest block
}

BlockSet compatible_blocks(const BlockSet& blocks, const Partition& partial) {
  std::vector<CommonBlock> kept;
  for (const CommonBlock& b : blocks)
    if (partial.can_place(b)) kept.push_back(b);
  return BlockSet::from_canonical(std::move(kept));
}

double LengthHistogram::fraction(int len) const {
  if (total == 0) return 0.0;
  auto it = counts.find(len);
  return it == counts.end() ? 0.0
                            : static_cast<double>(it->second) / static_cast<double>(total);
}

LengthHistogram length_histogram(const BlockSet& blocks) {
  LengthHistogram hist;
  for (const CommonBlock& b : blocks) ++hist.counts[b.len()];
  hist.total = blocks.size();
  return hist;
}

std::string dump_blocks(const BlockSet& blocks) {
  std::ostringstream out;
  for (const CommonBlock& b : blocks)
    out << b.text << '\t' << b.k1 << '\t' << b.k2 << '\n';
  return out.str();
}

std::vector<CommonBlock> parse_block_list(const std::string& text) {
  std::vector<CommonBlock> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw InputError("block list line " + std::to_string(lineno) +
                       ": expected text<TAB>k1<TAB>k2");
    CommonBlock b;
    b.text = line.substr(0, t1);
    try {
      std::size_t used1 = 0, used2 = 0;
      std::string f1 = line.substr(t1 + 1, t2 - t1 - 1);
      std::string f2 = line.substr(t2 + 1);
      b.k1 = std::stoi(f1, &used1);
      b.k2 = std::stoi(f2, &used2);
      if (used1 != f1.size() || used2 != f2.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("block list line " + std::to_string(lineno) +
                       ": positions must be integers");
    }
    if (b.text.empty() || b.k1 < 1 || b.k2 < 1)
      throw InputError("block list line " + std::to_string(lineno) +
                       ": text must be non-empty and positions >= 1");
    out.push_back(std::move(b));
  }
  return out;
}

std::string histogram_csv(const LengthHistogram& hist) {
  std::ostringstream out;
  out << "length,count\n";
  for (const auto& [len, count] : hist.counts) out << len << ',' << count << '\n';
  return out.str();
}

}  // namespace mcsp
