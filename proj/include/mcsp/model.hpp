#pragma once

// Integer linear programming formulations as a solver-independent IR.
//
// Three formulations share one shape.  Variables are binary, one per
// block, named x<i> by 1-based canonical index within the model's block
// list.  The coverage matrices are never materialized: each block covers
// one contiguous interval per string, so rows are built directly from the
// intervals.
//
//   min-partition (orig):  minimize sum x_i
//       subject to  sum len_i x_i  = n
//                   per-position coverage rows, both strings, = 1
//
//   max-coverage (phase 1, blocks of length >= l only):
//       maximize sum (C*len_i - 1) x_i
//       same rows with every = relaxed to <=
//
//   completion (phase 2): min-partition over a reduced block set with a
//       chosen partial solution pinned via explicit x_i = 1 rows.
//
// The phase-1 weight constant C makes one extra covered position worth
// more than any achievable block-count difference, so optima first
// maximize coverage and, among those, use the fewest blocks.  C = n+1 is
// the smallest integer with that property.
//
// Position rows touched by no block are omitted (possible in phase 1 when
// no long block covers a position; the row would be an empty sum).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcsp/core.hpp"

namespace mcsp {

enum class Sense { Minimize, Maximize };
enum class Relation { Equal, LessEqual };
enum class Formulation { MinPartition, MaxCoverage, Completion };

struct LinearTerm {
  int var = 0;  // 0-based variable index
  long long coeff = 0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::Equal;
  long long rhs = 0;
};

struct IlpModel {
  Sense sense = Sense::Minimize;
  Formulation formulation = Formulation::MinPartition;
  int n = 0;
  std::vector<long long> objective;          // coefficient per variable
  std::vector<LinearConstraint> constraints;  // length row, s1 rows, s2 rows, fix rows
  std::vector<int> fixed_ones;                // variables pinned to 1
  BlockSet blocks;                            // empty for imported models

  int var_count() const { return static_cast<int>(objective.size()); }
  static std::string var_name(int var) { return "x" + std::to_string(var + 1); }
};

// Smallest safe phase-1 weight constant for this instance: n + 1.
long long phase1_weight(const Instance& inst);

// blocks must all be consistent with inst.
IlpModel build_ilp_orig(const Instance& inst, const BlockSet& blocks);

// blocks must be non-empty with every length >= 2; weight must be >= n+1.
IlpModel build_ilp_ph1(const Instance& inst, const BlockSet& blocks, long long weight);

// forced must be a subset of blocks forming a valid partial selection.
IlpModel build_ilp_ph2(const Instance& inst, const BlockSet& blocks,
                       const std::vector<CommonBlock>& forced);

// Deterministic LP-format text: objective, rows, binary declarations, End.
void export_lp(const IlpModel& model, std::ostream& out);
void export_lp_file(const IlpModel& model, const std::filesystem::path& path);

// Reads LP text written by export_lp (plus reasonable whitespace/wrapping
// freedom).  Variables must be a contiguous x1..xm range, all binary.
// The formulation tag is inferred: Maximize -> MaxCoverage, Minimize with
// fix rows -> Completion, otherwise MinPartition.  blocks stays empty.
IlpModel import_lp(std::istream& in);
IlpModel import_lp_file(const std::filesystem::path& path);

// IR equality up to term order: sense, objective, row names, relations,
// right-hand sides, and per-row coefficient maps.
bool models_equivalent(const IlpModel& a, const IlpModel& b);

struct SolutionImport {
  std::vector<int> variables;       // 0-based indices assigned 1
  std::vector<CommonBlock> blocks;  // corresponding blocks, canonical order
  PartitionStatus status = PartitionStatus::Partial;
};

// Assignment text: lines of `<var-name> <0|1>`, order-insensitive,
// unlisted variables default to 0.  Unknown names and fractional values
// raise InputError; assignments violating any model constraint raise
// ValidationError.
SolutionImport import_solution(const IlpModel& model, const std::string& assignment);

}  // namespace mcsp
