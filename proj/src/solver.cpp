#include "mcsp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "mcsp/instgen.hpp"

namespace mcsp {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ProvenOptimal: return "ProvenOptimal";
    case SolveStatus::FeasibleTimeLimit: return "FeasibleTimeLimit";
    case SolveStatus::NoSolutionTimeLimit: return "NoSolutionTimeLimit";
  }
  return "?";
}

namespace {

using SteadyClock = std::chrono::steady_clock;

double seconds_since(SteadyClock::time_point t0) {
  return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

double relative_gap(long long objective, long long bound) {
  return static_cast<double>(std::llabs(objective - bound)) /
         std::max<double>(static_cast<double>(std::llabs(objective)), 1.0);
}

// Per-position block index lists.  Scanning the canonical order fills each
// list in descending length with k2 ascending on ties, which is exactly
// the intended branching order.
std::vector<std::vector<int>> starts_by_position(const BlockSet& blocks, int n) {
  std::vector<std::vector<int>> starts(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    starts[static_cast<std::size_t>(blocks[i].k1)].push_back(static_cast<int>(i));
  return starts;
}

// longest_from[p] = longest block starting at any s1 position >= p; static
// overestimate of the longest placeable block, hence admissible in bounds.
std::vector<int> longest_from_position(const BlockSet& blocks,
                                       const std::vector<std::vector<int>>& starts, int n) {
  std::vector<int> longest(static_cast<std::size_t>(n) + 2, 0);
  for (int p = n; p >= 1; --p) {
    int here = starts[static_cast<std::size_t>(p)].empty()
                   ? 0
                   : blocks[static_cast<std::size_t>(
                                starts[static_cast<std::size_t>(p)].front())]
                         .len();
    longest[static_cast<std::size_t>(p)] =
        std::max(longest[static_cast<std::size_t>(p) + 1], here);
  }
  return longest;
}

struct MinPartitionSearch {
  const Instance& inst;
  const BlockSet& blocks;
  const SolverConfig& cfg;
  std::vector<std::vector<int>> starts;
  std::vector<int> longest_from;

  Partition cur;
  long long best = std::numeric_limits<long long>::max();
  std::optional<Partition> incumbent;
  std::optional<double> time_first, time_best;

  SteadyClock::time_point t0 = SteadyClock::now();
  bool interrupted = false;
  long long root_bound = 0;   // bound of the whole tree, fallback at the root
  long long final_bound = 0;  // dual bound captured at interruption
  std::vector<long long> open_bounds;
  std::uint64_t nodes = 0;

  MinPartitionSearch(const Instance& inst_, const BlockSet& blocks_, const SolverConfig& cfg_)
      : inst(inst_),
        blocks(blocks_),
        cfg(cfg_),
        starts(starts_by_position(blocks_, inst_.n())),
        longest_from(longest_from_position(blocks_, starts, inst_.n())),
        cur(inst_.n()) {}

  bool should_stop() {
    if (cfg.deterministic) return false;
    double elapsed = seconds_since(t0);
    if (elapsed >= cfg.time_limit_s) return true;
    return cfg.stop_after_first_feasible_s && incumbent &&
           elapsed >= *cfg.stop_after_first_feasible_s;
  }

  // The optimum is the incumbent value or lives in some open subtree, so
  // min(best, open-node bounds) is a valid global lower bound.  Node
  // bounds never decrease along a root-leaf path, which makes the stack
  // entries representative of every unexplored descendant.
  void interrupt() {
    interrupted = true;
    long long b = open_bounds.empty()
                      ? root_bound
                      : *std::min_element(open_bounds.begin(), open_bounds.end());
    if (incumbent) b = std::min(b, best);
    final_bound = b;
  }

  void record_incumbent() {
    if (static_cast<long long>(cur.size()) >= best) return;
    best = static_cast<long long>(cur.size());
    incumbent = cur;
    time_best = seconds_since(t0);
    if (!time_first) time_first = time_best;
  }

  void dfs(int from) {
    ++nodes;
    if (should_stop()) {
      interrupt();
      return;
    }
    int pos = from;
    while (pos <= inst.n() && cur.covered1(pos)) ++pos;
    if (pos > inst.n()) {
      record_incumbent();
      return;
    }
    int cap = longest_from[static_cast<std::size_t>(pos)];
    if (cap == 0) return;  // position unreachable: dead branch
    long long lb = static_cast<long long>(cur.size()) +
                   ceil_div(inst.n() - cur.covered_len(), cap);
    if (lb >= best) return;
    open_bounds.push_back(lb);
    for (int idx : starts[static_cast<std::size_t>(pos)]) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
      if (!cur.try_place(idx, b)) continue;
      dfs(pos + b.len());
      cur.unplace_last(b);
      if (interrupted || lb >= best) break;
    }
    open_bounds.pop_back();
  }
};

}  // namespace

SolveResult solve_min_partition(const Instance& inst, const BlockSet& blocks,
                                const std::vector<CommonBlock>& forced,
                                const SolverConfig& cfg) {
  MinPartitionSearch search(inst, blocks, cfg);
  for (const CommonBlock& b : forced) {
    auto idx = blocks.find(b);
    if (!idx)
      throw ValidationError("forced block (" + b.text + "," + std::to_string(b.k1) + "," +
                            std::to_string(b.k2) + ") is not in the block set");
    if (!block_consistent(inst, b))
      throw ValidationError("forced block (" + b.text + "," + std::to_string(b.k1) + "," +
                            std::to_string(b.k2) + ") does not match the instance");
    search.cur.place(static_cast<int>(*idx), b);  // throws if forced blocks overlap
  }

  // Root bound, also the fallback dual bound for an immediate interruption.
  {
    int pos = 1;
    while (pos <= inst.n() && search.cur.covered1(pos)) ++pos;
    if (pos > inst.n()) {
      search.root_bound = static_cast<long long>(search.cur.size());
    } else {
      int cap = search.longest_from[static_cast<std::size_t>(pos)];
      if (cap == 0)
        throw ValidationError("no complete partition exists: position " +
                              std::to_string(pos) + " of s1 is not covered by any block");
      search.root_bound = static_cast<long long>(search.cur.size()) +
                          ceil_div(inst.n() - search.cur.covered_len(), cap);
    }
  }

  search.dfs(1);

  SolveResult res;
  res.nodes = search.nodes;
  res.time_total_s = seconds_since(search.t0);
  res.time_first_s = search.time_first;
  res.time_best_s = search.time_best;
  if (!search.interrupted) {
    if (!search.incumbent)
      throw ValidationError("no complete partition exists over the given block set");
    res.status = SolveStatus::ProvenOptimal;
    res.incumbent = std::move(search.incumbent);
    res.objective = search.best;
    res.bound = search.best;
    res.gap = 0.0;
    return res;
  }
  res.bound = search.final_bound;
  if (search.incumbent) {
    res.status = SolveStatus::FeasibleTimeLimit;
    res.incumbent = std::move(search.incumbent);
    res.objective = search.best;
    res.gap = relative_gap(res.objective, res.bound);
  } else {
    res.status = SolveStatus::NoSolutionTimeLimit;
  }
  return res;
}

namespace {

// Warm-start selection built with plain cover masks so blocks can be
// removed in any order (Partition only supports stack-order undo).
struct WarmStart {
  const Instance& inst;
  const BlockSet& blocks;
  long long weight;
  int min_len;
  std::vector<char> c1, c2;  // 1-based cover masks
  std::vector<int> sel;      // selected block indices, kept sorted
  long long cov = 0;

  WarmStart(const Instance& inst_, const BlockSet& blocks_, long long weight_, int min_len_)
      : inst(inst_),
        blocks(blocks_),
        weight(weight_),
        min_len(min_len_),
        c1(static_cast<std::size_t>(inst_.n()) + 2, 0),
        c2(static_cast<std::size_t>(inst_.n()) + 2, 0) {}

  long long value() const { return weight * cov - static_cast<long long>(sel.size()); }

  bool placeable(const CommonBlock& b) const {
    for (int i = 0; i < b.len(); ++i)
      if (c1[static_cast<std::size_t>(b.k1 + i)] || c2[static_cast<std::size_t>(b.k2 + i)])
        return false;
    return true;
  }

  // Length of the free run from `from` going `step`-wise, or 0 once it
  // reaches min_len: only remainders too short to host another block count
  // as dead space.
  int dead_run(const std::vector<char>& c, int from, int step) const {
    int d = 0;
    for (int q = from; q >= 1 && q <= inst.n() && !c[static_cast<std::size_t>(q)]; q += step)
      if (++d >= min_len) return 0;
    return d;
  }

  // Net gain of placing b: positions covered minus dead space created
  // beside it on either string.
  int net(const CommonBlock& b) const {
    return b.len() - dead_run(c1, b.k1 - 1, -1) - dead_run(c1, b.end1() + 1, +1) -
           dead_run(c2, b.k2 - 1, -1) - dead_run(c2, b.end2() + 1, +1);
  }

  void mark(const CommonBlock& b, char v) {
    for (int i = 0; i < b.len(); ++i) {
      c1[static_cast<std::size_t>(b.k1 + i)] = v;
      c2[static_cast<std::size_t>(b.k2 + i)] = v;
    }
  }

  void add(int idx) {
    const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
    mark(b, 1);
    sel.insert(std::lower_bound(sel.begin(), sel.end(), idx), idx);
    cov += b.len();
  }

  void remove(int idx) {
    const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
    mark(b, 0);
    sel.erase(std::lower_bound(sel.begin(), sel.end(), idx));
    cov -= b.len();
  }

  // Greedy to a maximal selection: best net gain first.  Ties go to
  // canonical order, or to a uniform draw when gen is given (used by the
  // perturbation rounds for diversification).  Every placement improves
  // the objective, so never stop early.
  void fill(std::mt19937_64* gen = nullptr) {
    for (;;) {
      int pick = -1, pick_net = 0;
      std::uint64_t ties = 0;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!placeable(blocks[i])) continue;
        int g = net(blocks[i]);
        if (pick < 0 || g > pick_net) {
          pick = static_cast<int>(i);
          pick_net = g;
          ties = 1;
        } else if (gen && g == pick_net && rng::bounded(*gen, ++ties) == 0) {
          pick = static_cast<int>(i);  // reservoir draw over equal-net blocks
        }
      }
      if (pick < 0) return;
      add(pick);
    }
  }

  // Remove the given blocks, refill greedily, keep the result only if the
  // objective strictly improves.
  bool improve_eject(const std::vector<int>& out) {
    long long v0 = value();
    std::vector<char> c1s = c1, c2s = c2;
    std::vector<int> sels = sel;
    long long covs = cov;
    for (int idx : out) remove(idx);
    fill();
    if (value() > v0) return true;
    c1 = std::move(c1s);
    c2 = std::move(c2s);
    sel = std::move(sels);
    cov = covs;
    return false;
  }

  // Eject every selected block whose interval on the chosen string meets
  // [lo, hi], then refill.
  bool improve_window(int lo, int hi, bool on_s2) {
    std::vector<int> victims = window_victims(lo, hi, on_s2);
    if (victims.empty()) return false;
    return improve_eject(victims);
  }

  std::vector<int> window_victims(int lo, int hi, bool on_s2) const {
    std::vector<int> victims;
    for (int idx : sel) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
      int a = on_s2 ? b.k2 : b.k1;
      int e = on_s2 ? b.end2() : b.end1();
      if (a <= hi && e >= lo) victims.push_back(idx);
    }
    return victims;
  }

  struct State {
    std::vector<char> c1, c2;
    std::vector<int> sel;
    long long cov;
  };
  State save() const { return {c1, c2, sel, cov}; }
  void restore(const State& s) {
    c1 = s.c1;
    c2 = s.c2;
    sel = s.sel;
    cov = s.cov;
  }

  // Local search to a fixpoint: single and pairwise eject-and-refill plus
  // improving window rebuilds on both strings.  Quadratic move sets are
  // gated by pool size so large pools fall back to cheaper passes.
  void descend() {
    const long long m = static_cast<long long>(blocks.size());
    for (int pass = 0; pass < 20; ++pass) {
      bool improved = false;
      long long k = static_cast<long long>(sel.size());
      if (k * m <= 50'000'000) {
        std::vector<int> snapshot = sel;
        for (int idx : snapshot)
          if (std::binary_search(sel.begin(), sel.end(), idx)) improved |= improve_eject({idx});
      }
      if (k * k * m <= 200'000'000) {
        std::vector<int> snapshot = sel;
        for (std::size_t i = 0; i < snapshot.size(); ++i)
          for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
            if (!std::binary_search(sel.begin(), sel.end(), snapshot[i]) ||
                !std::binary_search(sel.begin(), sel.end(), snapshot[j]))
              continue;
            improved |= improve_eject({snapshot[i], snapshot[j]});
          }
      }
      if (m <= 20'000) {
        for (int w : {16, 32, 64, 128}) {
          if (w > inst.n()) break;
          for (int lo = 1; lo + w - 1 <= inst.n(); lo += w / 2) {
            improved |= improve_window(lo, lo + w - 1, false);
            improved |= improve_window(lo, lo + w - 1, true);
          }
        }
      }
      if (!improved) break;
    }
  }
};

struct MaxCoverageSearch {
  const Instance& inst;
  const BlockSet& blocks;
  long long weight;
  const SolverConfig& cfg;
  std::vector<std::vector<int>> starts;
  std::vector<long long> reach_after;  // see ctor
  int max_len = 1;
  int min_len = 1;

  Partition cur;
  long long best = -1;
  std::optional<Partition> incumbent;
  std::optional<double> time_first, time_best;

  // Free intervals of s2 (start -> length) and their usable capacity: an
  // interval shorter than the pool's minimum block length can never host
  // another block, so it contributes nothing to future coverage.
  std::map<int, int> free2;
  long long cap2 = 0;
  struct PlaceUndo {
    int start, len;        // the free interval that was split
    long long cap_delta;
  };
  std::vector<PlaceUndo> undo_stack;

  SteadyClock::time_point t0 = SteadyClock::now();
  bool interrupted = false;
  long long root_bound = 0;
  long long final_bound = 0;
  std::vector<long long> open_bounds;
  std::uint64_t nodes = 0;

  struct Candidate {
    int idx;
    int score;
  };
  std::vector<std::vector<Candidate>> scratch;  // per recursion depth

  MaxCoverageSearch(const Instance& inst_, const BlockSet& blocks_, long long weight_,
                    const SolverConfig& cfg_)
      : inst(inst_),
        blocks(blocks_),
        weight(weight_),
        cfg(cfg_),
        starts(starts_by_position(blocks_, inst_.n())),
        cur(inst_.n()) {
    // Blocks are only ever placed at the branch position, so at a node
    // branching on position p the still-coverable s1 positions are exactly
    // those inside some block starting at or after p.  reach_after[p]
    // counts them: position q is reachable iff the rightmost start among
    // blocks covering q is >= p.
    const std::size_t n = static_cast<std::size_t>(inst.n());
    std::vector<int> rightmost_start(n + 1, 0);
    for (const CommonBlock& b : blocks) {
      max_len = std::max(max_len, b.len());
      for (int q = b.k1; q <= b.end1(); ++q)
        rightmost_start[static_cast<std::size_t>(q)] =
            std::max(rightmost_start[static_cast<std::size_t>(q)], b.k1);
    }
    std::vector<long long> starts_hist(n + 2, 0);
    for (std::size_t q = 1; q <= n; ++q) ++starts_hist[static_cast<std::size_t>(rightmost_start[q])];
    reach_after.assign(n + 2, 0);
    for (std::size_t p = n; p >= 1; --p)
      reach_after[p] = reach_after[p + 1] + starts_hist[p];

    if (!blocks.empty()) min_len = blocks[blocks.size() - 1].len();  // canonical: last is shortest
    free2.emplace(1, inst.n());
    cap2 = usable(inst.n());
    scratch.resize(n + 3);  // depth advances pos by >= 1 per level
    root_bound = upper_bound(1, 0);
  }

  long long usable(int interval_len) const { return interval_len >= min_len ? interval_len : 0; }

  // Tight admissible bound: future coverage cannot exceed the reachable s1
  // positions nor the usable free capacity of s2, and covering r positions
  // takes at least ceil(r / max_len) blocks, each costing 1 against the
  // weighted gain.
  long long upper_bound(int pos, long long value) const {
    long long r = std::min(reach_after[static_cast<std::size_t>(pos)], cap2);
    if (r <= 0) return value;
    return value + weight * r - ceil_div(r, max_len);
  }

  // The free s2 interval [start, start+len) containing position k2.
  std::pair<int, int> free_interval_at(int k2) const {
    auto it = free2.upper_bound(k2);
    --it;
    return {it->first, it->second};
  }

  // Usable capacity lost when b lands inside its free interval: remainders
  // shorter than the pool's minimum length become dead space.
  int damage(const CommonBlock& b) const {
    auto [s, f] = free_interval_at(b.k2);
    int left = b.k2 - s;
    int right = s + f - (b.k2 + b.len());
    int d = 0;
    if (left > 0 && left < min_len) d += left;
    if (right > 0 && right < min_len) d += right;
    return d;
  }

  void note_place(const CommonBlock& b) {
    auto [s, f] = free_interval_at(b.k2);
    int left = b.k2 - s;
    int right = s + f - (b.k2 + b.len());
    free2.erase(s);
    if (left > 0) free2.emplace(s, left);
    if (right > 0) free2.emplace(b.k2 + b.len(), right);
    long long delta = usable(left) + usable(right) - usable(f);
    cap2 += delta;
    undo_stack.push_back({s, f, delta});
  }

  void note_unplace(const CommonBlock& b) {
    PlaceUndo u = undo_stack.back();
    undo_stack.pop_back();
    int left = b.k2 - u.start;
    int right = u.start + u.len - (b.k2 + b.len());
    if (left > 0) free2.erase(u.start);
    if (right > 0) free2.erase(b.k2 + b.len());
    free2.emplace(u.start, u.len);
    cap2 -= u.cap_delta;
  }

  bool should_stop() {
    if (cfg.deterministic) return false;
    double elapsed = seconds_since(t0);
    if (elapsed >= cfg.time_limit_s) return true;
    // An incumbent always exists (the empty selection), which makes the
    // first-feasible rule a plain elapsed-time threshold here.
    return cfg.stop_after_first_feasible_s && elapsed >= *cfg.stop_after_first_feasible_s;
  }

  // Mirror of the min-partition bound: the optimum is the incumbent value
  // or bounded by some open subtree's upper bound.
  void interrupt() {
    interrupted = true;
    long long b = open_bounds.empty()
                      ? root_bound
                      : *std::max_element(open_bounds.begin(), open_bounds.end());
    final_bound = std::max(b, best);
  }

  void record_incumbent(long long value) {
    if (value <= best) return;
    best = value;
    incumbent = cur;
    time_best = seconds_since(t0);
    if (!time_first) time_first = time_best;
  }

  // Warm-start incumbent: greedy construction, local search to a fixpoint,
  // then iterated local search with a fixed seed (perturb by force-ejecting
  // a random window of the selection, re-descend, keep the better state).
  // Everything is deterministic and the result is always feasible; the
  // exact search then starts from it, and pruning still only discards
  // subtrees that cannot beat it.
  void seed_incumbent() {
    WarmStart ws(inst, blocks, weight, min_len);
    ws.fill();
    ws.descend();
    if (blocks.size() <= 20'000 && !ws.sel.empty()) {
      WarmStart::State best_state = ws.save();
      long long best_value = ws.value();
      std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
      int fails = 0;
      for (int round = 0; round < 600; ++round) {
        if (!cfg.deterministic && seconds_since(t0) >= cfg.time_limit_s) break;
        bool on_s2 = rng::bounded(gen, 2) != 0;
        int w = 4 * min_len + static_cast<int>(rng::bounded(gen, 8ULL * min_len + 1));
        w = std::min(w, inst.n());
        int lo = 1 + static_cast<int>(rng::bounded(gen, inst.n() - w + 1ULL));
        std::vector<int> victims = ws.window_victims(lo, lo + w - 1, on_s2);
        for (int extra = 0; extra < 2 && !ws.sel.empty(); ++extra) {
          int idx = ws.sel[rng::bounded(gen, ws.sel.size())];
          if (std::find(victims.begin(), victims.end(), idx) == victims.end())
            victims.push_back(idx);
        }
        if (victims.empty()) continue;
        for (int idx : victims) ws.remove(idx);
        ws.fill(&gen);
        ws.descend();
        long long v = ws.value();
        if (v > best_value) {
          best_state = ws.save();
          best_value = v;
          fails = 0;
        } else if (v + 2 * weight >= best_value && fails < 15) {
          ++fails;  // walk the plateau instead of snapping back
        } else {
          ws.restore(best_state);
          fails = 0;
        }
      }
      ws.restore(best_state);
    }
    Partition p(inst.n());
    long long value = 0;
    for (int idx : ws.sel) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
      p.place(idx, b);
      value += weight * b.len() - 1;
    }
    best = value;
    incumbent = std::move(p);
    time_best = time_first = seconds_since(t0);
  }

  // Every placement starts at the branch position, so s1 coverage stays a
  // prefix of [1, pos) and every position >= pos is undecided.
  void dfs(int pos, long long value, std::size_t depth) {
    ++nodes;
    if (should_stop()) {
      interrupt();
      return;
    }
    if (pos > inst.n() || reach_after[static_cast<std::size_t>(pos)] == 0) {
      record_incumbent(value);  // nothing ahead can be covered: leaf
      return;
    }
    long long ub = upper_bound(pos, value);
    if (ub <= best) return;
    open_bounds.push_back(ub);

    // Children in descending (length - damage): snug placements first,
    // ones that shred s2 free space last.  Ties: longer first, then k2.
    std::vector<Candidate>& cands = scratch[depth];
    cands.clear();
    for (int idx : starts[static_cast<std::size_t>(pos)]) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(idx)];
      if (!cur.can_place(b)) continue;
      cands.push_back({idx, b.len() - damage(b)});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

    for (const Candidate& cand : cands) {
      const CommonBlock& b = blocks[static_cast<std::size_t>(cand.idx)];
      if (!cur.try_place(cand.idx, b)) continue;
      note_place(b);
      dfs(pos + b.len(), value + weight * b.len() - 1, depth + 1);
      note_unplace(b);
      cur.unplace_last(b);
      if (interrupted || ub <= best) break;  // incumbent closed this node
    }
    // Skip branch: mark pos permanently uncovered.
    if (!interrupted && ub > best) dfs(pos + 1, value, depth + 1);
    open_bounds.pop_back();
  }
};

}  // namespace

SolveResult solve_max_coverage(const Instance& inst, const BlockSet& blocks,
                               long long weight, const SolverConfig& cfg) {
  if (weight < inst.n() + 1LL)
    throw ValidationError("coverage weight must be >= n+1 = " +
                          std::to_string(inst.n() + 1LL));
  MaxCoverageSearch search(inst, blocks, weight, cfg);
  search.seed_incumbent();  // feasible from t = 0 (at worst the empty selection)
  search.dfs(1, 0, 0);

  SolveResult res;
  res.nodes = search.nodes;
  res.time_total_s = seconds_since(search.t0);
  res.time_first_s = search.time_first;
  res.time_best_s = search.time_best;
  res.incumbent = std::move(search.incumbent);
  res.objective = search.best;
  if (!search.interrupted) {
    res.status = SolveStatus::ProvenOptimal;
    res.bound = search.best;
    res.gap = 0.0;
  } else {
    res.status = SolveStatus::FeasibleTimeLimit;
    res.bound = search.final_bound;
    res.gap = relative_gap(res.objective, res.bound);
  }
  return res;
}

int brute_force_optimal(const Instance& inst) {
  constexpr int kMaxN = 14;
  const int n = inst.n();
  if (n > kMaxN)
    throw ValidationError("instance too large for the exhaustive oracle (n <= " +
                          std::to_string(kMaxN) + ")");
  const std::string& s1 = inst.s1();
  const std::string& s2 = inst.s2();

  // State: next uncovered s1 position (prefix coverage) and the mask of
  // used s2 positions.  Matching always extends from the leftmost
  // uncovered s1 position, so s1 coverage stays a prefix.
  std::unordered_map<std::uint32_t, int> memo;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;

  auto rec = [&](auto&& self, int pos, std::uint32_t mask2) -> int {
    if (pos == n) return 0;
    std::uint32_t key = (static_cast<std::uint32_t>(pos) << kMaxN) | mask2;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int best = kInf;
    for (int k2 = 0; k2 < n; ++k2) {
      if (s2[static_cast<std::size_t>(k2)] != s1[static_cast<std::size_t>(pos)]) continue;
      std::uint32_t used = mask2;
      for (int len = 1; pos + len <= n && k2 + len <= n; ++len) {
        std::uint32_t bit = 1u << (k2 + len - 1);
        if (used & bit) break;
        if (s1[static_cast<std::size_t>(pos + len - 1)] !=
            s2[static_cast<std::size_t>(k2 + len - 1)])
          break;
        used |= bit;
        best = std::min(best, 1 + self(self, pos + len, used));
      }
    }
    memo.emplace(key, best);
    return best;
  };

  return rec(rec, 0, 0);
}

}  // namespace mcsp
