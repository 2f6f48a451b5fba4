#pragma once

// Specialized branch-and-bound for the two model shapes.
//
// Both formulations have pure interval-coverage rows, so a combinatorial
// search over cover masks is complete and much simpler than a general MIP
// engine.  Branching is position-based on s1:
//
//   min-partition:  at the leftmost uncovered s1 position, try every
//       compatible block starting there, longest first (k2 ascending on
//       ties).  Lower bound: blocks used so far plus
//       ceil(uncovered / longest block starting at or after the position).
//
//   max-coverage:   at the leftmost undecided s1 position, either place a
//       compatible block starting there (snug placements first) or mark
//       the position permanently uncovered.  Upper bound: current weight
//       plus weight-constant times the remaining coverable length — the
//       smaller of the still-reachable s1 positions (inside some block
//       starting at or after the branch position) and the usable free
//       capacity of s2 — minus the minimum block count needed to take it.
//       Before the tree search, a warm-start incumbent is built by greedy
//       construction plus deterministic local search, so this solve always
//       holds a feasible solution (at worst the empty selection).
//
// Stopping: a solve ends when the tree is exhausted (ProvenOptimal), when
// the hard time limit is hit, or — if stop_after_first_feasible_s is set —
// as soon as that much time has elapsed and an incumbent exists.  The
// reported dual bound at an interruption is the tightest bound over all
// open subtrees, so it brackets the true optimum from below (minimize) or
// above (maximize).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mcsp/core.hpp"

namespace mcsp {

struct SolverConfig {
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::optional<double> stop_after_first_feasible_s;
  // Disables both wall-clock stops, so repeated runs explore identical
  // trees and report identical node counts.
  bool deterministic = false;
};

enum class SolveStatus { ProvenOptimal, FeasibleTimeLimit, NoSolutionTimeLimit };

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::NoSolutionTimeLimit;
  std::optional<Partition> incumbent;  // indices refer to the solve's block set
  long long objective = 0;             // valid when incumbent is set
  long long bound = 0;                 // lower bound (min) / upper bound (max)
  double gap = std::numeric_limits<double>::infinity();
  std::optional<double> time_first_s;  // when the first incumbent appeared
  std::optional<double> time_best_s;   // when the final incumbent appeared
  double time_total_s = 0.0;
  std::uint64_t nodes = 0;
};

// Exact minimum partition over the given blocks, with forced blocks pinned
// into every solution.  Throws ValidationError if the forced blocks are
// invalid or the search proves that no complete partition exists.
SolveResult solve_min_partition(const Instance& inst, const BlockSet& blocks,
                                const std::vector<CommonBlock>& forced,
                                const SolverConfig& cfg);

// Maximum weighted coverage over blocks (all length >= 2 in intended use);
// weight must be >= n+1 so coverage dominates block count.
SolveResult solve_max_coverage(const Instance& inst, const BlockSet& blocks,
                               long long weight, const SolverConfig& cfg);

// Testing oracle: exact minimum partition size by exhaustive matching of
// the leftmost uncovered s1 position, memoized on (position, s2 mask).
// Independent of BlockSet and of the branch-and-bound above.  Guarded to
// n <= 14.
int brute_force_optimal(const Instance& inst);

}  // namespace mcsp
