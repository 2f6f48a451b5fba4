#pragma once

// Two-phase heuristic.
//
// Phase 1 solves the max-coverage model over the blocks of length >= l,
// producing a partial solution S that covers as much of both strings as
// possible while preferring fewer blocks (weight constant n+1).  Phase 2
// solves the completion model over S plus every block still compatible
// with S, with S pinned into the solution.  The sweep driver runs the
// two phases for every l in [2, max block length] and keeps the best
// complete solution.
//
// Each solve follows the default stopping rule: accept the incumbent once
// it is provenly optimal or once 50 seconds have elapsed and a feasible
// solution exists.  Reported times include model preparation.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcsp/core.hpp"
#include "mcsp/solver.hpp"

namespace mcsp {

struct HeuristicConfig {
  std::optional<int> min_len;  // fixed l; empty means sweep [2, max length]
  SolverConfig per_solve;
  int workers = 1;  // parallel sweep entries; 1 = sequential

  HeuristicConfig() { per_solve.stop_after_first_feasible_s = 50.0; }
};

// Outcome of one phase: the block pool the solve ran over, the raw solve
// result (incumbent indices refer to the pool), and the chosen triples.
struct PhaseRun {
  BlockSet pool;
  SolveResult result;
  std::vector<CommonBlock> selected;
};

// Phase 1 over blocks of length >= min_len taken from the complete set.
// Requires 2 <= min_len <= max_block_length(blocks).
PhaseRun run_phase1(const Instance& inst, const BlockSet& blocks, int min_len,
                    const SolverConfig& cfg);

// Phase 2: completion around the given partial selection (typically the
// phase-1 output, but any valid partial selection works, e.g. one read
// back from an external solver).  Always returns a complete partition
// containing every forced block; if the solve is cut off before its first
// dive finishes, the remainder is completed with singletons.
PhaseRun run_phase2(const Instance& inst, const BlockSet& blocks,
                    const std::vector<CommonBlock>& partial, const SolverConfig& cfg);

struct TwoPhaseResult {
  int min_len = 0;
  PhaseRun phase1;
  PhaseRun phase2;
  long long objective = 0;  // size of the complete phase-2 partition
  double time_total_s = 0.0;
};

TwoPhaseResult two_phase(const Instance& inst, const BlockSet& blocks, int min_len,
                         const SolverConfig& per_solve);
TwoPhaseResult two_phase(const Instance& inst, int min_len, const SolverConfig& per_solve);

struct SweepEntry {
  int min_len = 0;
  std::size_t phase1_pool_size = 0;  // |B restricted to length >= l|
  std::size_t phase2_pool_size = 0;  // |completion pool|
  bool phase1_proven_optimal = false;
  bool phase2_proven_optimal = false;
  long long objective = 0;
  double time_s = 0.0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;       // one per l, ascending
  long long best_objective = 0;
  int best_min_len = 0;                  // 0 when the fallback was used
  std::vector<CommonBlock> best_blocks;  // canonical order
  double total_time_s = 0.0;
  bool singleton_fallback = false;  // no block of length >= 2 existed
  std::string warning;
};

// Runs two_phase for every l in [2, max block length].  When the longest
// block has length 1 the sweep is empty: the singleton partition is
// returned with a warning instead.  cfg.min_len restricts the sweep to a
// single l; cfg.workers > 1 runs entries concurrently.
SweepReport sweep_min_len(const Instance& inst, const BlockSet& blocks,
                          const HeuristicConfig& cfg);

nlohmann::json sweep_report_json(const SweepReport& report);

// One row per l: l, pool sizes, proven-optimality flags, objective, time.
std::string sweep_report_csv(const SweepReport& report);

}  // namespace mcsp
