#include "mcsp/heuristic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <sstream>

#include "mcsp/blocks.hpp"
#include "mcsp/model.hpp"

namespace mcsp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PhaseRun run_phase1(const Instance& inst, const BlockSet& blocks, int min_len,
                    const SolverConfig& cfg) {
  if (min_len < 2)
    throw ValidationError("phase-1 minimum length must be >= 2, got " +
                          std::to_string(min_len));
  int longest = max_block_length(blocks);
  if (min_len > longest)
    throw ValidationError("phase-1 minimum length " + std::to_string(min_len) +
                          " exceeds the longest block length " + std::to_string(longest));
  PhaseRun run;
  run.pool = filter_min_length(blocks, min_len);
  run.result = solve_max_coverage(inst, run.pool, phase1_weight(inst), cfg);
  if (run.result.incumbent)
    run.selected = selection_blocks(run.pool, *run.result.incumbent);
  return run;
}

PhaseRun run_phase2(const Instance& inst, const BlockSet& blocks,
                    const std::vector<CommonBlock>& partial, const SolverConfig& cfg) {
  PartitionCheck check = validate_blocks(inst, partial);
  if (!check.ok())
    throw ValidationError("phase-2 input is not a valid partial solution: " + check.reason);

  PhaseRun run;
  std::vector<CommonBlock> pool = partial;
  const BlockSet compat = compatible_blocks(blocks, check.partition);
  pool.insert(pool.end(), compat.begin(), compat.end());
  run.pool = BlockSet::from_blocks(std::move(pool));
  run.result = solve_min_partition(inst, run.pool, partial, cfg);

  if (!run.result.incumbent) {
    // Only reachable when the time limit cuts the solve before its first
    // dive completes.  Complete the forced selection with singletons; the
    // solver's dual bound stays valid for this weaker incumbent.
    Partition p(inst.n());
    for (const CommonBlock& b : partial)
      p.place(static_cast<int>(*run.pool.find(b)), b);
    for (int k1 = 1; k1 <= inst.n(); ++k1) {
      if (p.covered1(k1)) continue;
      for (int k2 = 1; k2 <= inst.n(); ++k2) {
        if (p.covered2(k2) || inst.s2_at(k2) != inst.s1_at(k1)) continue;
        CommonBlock single{std::string(1, inst.s1_at(k1)), k1, k2};
        auto idx = run.pool.find(single);
        if (!idx)
          throw ValidationError("completion pool is missing singleton (" + single.text +
                                "," + std::to_string(k1) + "," + std::to_string(k2) + ")");
        p.place(static_cast<int>(*idx), single);
        break;
      }
    }
    run.result.status = SolveStatus::FeasibleTimeLimit;
    run.result.objective = static_cast<long long>(p.size());
    run.result.incumbent = std::move(p);
    run.result.time_best_s = run.result.time_total_s;
    if (!run.result.time_first_s) run.result.time_first_s = run.result.time_best_s;
    run.result.gap = static_cast<double>(run.result.objective - run.result.bound) /
                     std::max<double>(static_cast<double>(run.result.objective), 1.0);
  }
  run.selected = selection_blocks(run.pool, *run.result.incumbent);
  return run;
}

TwoPhaseResult two_phase(const Instance& inst, const BlockSet& blocks, int min_len,
                         const SolverConfig& per_solve) {
  auto t0 = std::chrono::steady_clock::now();
  TwoPhaseResult r;
  r.min_len = min_len;
  r.phase1 = run_phase1(inst, blocks, min_len, per_solve);
  r.phase2 = run_phase2(inst, blocks, r.phase1.selected, per_solve);
  r.objective = r.phase2.result.objective;
  r.time_total_s = seconds_since(t0);  // includes pool construction
  return r;
}

TwoPhaseResult two_phase(const Instance& inst, int min_len, const SolverConfig& per_solve) {
  return two_phase(inst, enumerate_blocks(inst), min_len, per_solve);
}

SweepReport sweep_min_len(const Instance& inst, const BlockSet& blocks,
                          const HeuristicConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  SweepReport report;

  const int longest = blocks.empty() ? 0 : max_block_length(blocks);
  if (longest < 2 && !cfg.min_len) {
    report.singleton_fallback = true;
    report.warning = "no common block of length >= 2; returning the singleton partition";
    report.best_blocks = singleton_blocks(inst);
    std::sort(report.best_blocks.begin(), report.best_blocks.end(), canonical_less);
    report.best_objective = inst.n();
    report.best_min_len = 0;
    report.total_time_s = seconds_since(t0);
    return report;
  }

  int lo = 2, hi = longest;
  if (cfg.min_len) lo = hi = *cfg.min_len;  // range-checked by run_phase1
  const int count = hi - lo + 1;
  std::vector<TwoPhaseResult> results(static_cast<std::size_t>(count));

  if (cfg.workers <= 1 || count == 1) {
    for (int i = 0; i < count; ++i)
      results[static_cast<std::size_t>(i)] = two_phase(inst, blocks, lo + i, cfg.per_solve);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        results[static_cast<std::size_t>(i)] = two_phase(inst, blocks, lo + i, cfg.per_solve);
      }
    };
    std::vector<std::future<void>> futures;
    int pool_size = std::min(cfg.workers, count);
    futures.reserve(static_cast<std::size_t>(pool_size));
    for (int w = 0; w < pool_size; ++w)
      futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  std::size_t best_i = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TwoPhaseResult& r = results[i];
    report.entries.push_back({r.min_len, r.phase1.pool.size(), r.phase2.pool.size(),
                              r.phase1.result.status == SolveStatus::ProvenOptimal,
                              r.phase2.result.status == SolveStatus::ProvenOptimal,
                              r.objective, r.time_total_s});
    if (r.objective < results[best_i].objective) best_i = i;  // tie keeps smaller l
  }
  report.best_objective = results[best_i].objective;
  report.best_min_len = results[best_i].min_len;
  report.best_blocks = results[best_i].phase2.selected;
  report.total_time_s = seconds_since(t0);
  return report;
}

nlohmann::json sweep_report_json(const SweepReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SweepEntry& e : report.entries) {
    entries.push_back({{"l", e.min_len},
                       {"phase1_blocks", e.phase1_pool_size},
                       {"phase2_blocks", e.phase2_pool_size},
                       {"phase1_proven_optimal", e.phase1_proven_optimal},
                       {"phase2_proven_optimal", e.phase2_proven_optimal},
                       {"objective", e.objective},
                       {"time_s", e.time_s}});
  }
  nlohmann::json j{{"entries", std::move(entries)},
                   {"best_l", report.best_min_len},
                   {"best_objective", report.best_objective},
                   {"total_time_s", report.total_time_s},
                   {"singleton_fallback", report.singleton_fallback}};
  if (!report.warning.empty()) j["warning"] = report.warning;
  return j;
}

std::string sweep_report_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "l,phase1_blocks,phase2_blocks,phase1_proven_optimal,phase2_proven_optimal,"
         "objective,time_s\n";
  for (const SweepEntry& e : report.entries)
    out << e.min_len << ',' << e.phase1_pool_size << ',' << e.phase2_pool_size << ','
        << (e.phase1_proven_optimal ? 1 : 0) << ',' << (e.phase2_proven_optimal ? 1 : 0)
        << ',' << e.objective << ',' << e.time_s << '\n';
  return out.str();
}

}  // namespace mcsp
