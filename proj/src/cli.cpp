#include "mcsp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcsp/blocks.hpp"
#include "mcsp/core.hpp"
#include "mcsp/greedy.hpp"
#include "mcsp/heuristic.hpp"
#include "mcsp/instgen.hpp"
#include "mcsp/model.hpp"
#include "mcsp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mcsp::cli {

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError {
  std::string message;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Empty path means stdout.
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write file: " + path);
  f << text;
  if (!f) throw InputError("write failure on file: " + path);
}

json block_json(const CommonBlock& b) {
  return {{"text", b.text}, {"k1", b.k1}, {"k2", b.k2}};
}

json blocks_json(const std::vector<CommonBlock>& blocks) {
  json arr = json::array();
  for (const CommonBlock& b : blocks) arr.push_back(block_json(b));
  return arr;
}

json number_or_null(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

// CLI outputs only complete, verified partitions.
void assert_complete(const Instance& inst, const std::vector<CommonBlock>& blocks) {
  PartitionCheck check = validate_blocks(inst, blocks);
  if (check.status != PartitionStatus::Complete)
    throw std::logic_error("produced solution failed re-validation: " +
                           (check.reason.empty() ? std::string("incomplete") : check.reason));
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  int n = 0;
  std::string alphabet = "ACGT";
  std::uint64_t seed = 1;
  std::string out;
};

void do_gen(const GenOpts& o, std::ostream& out) {
  Instance inst = generate_instance(o.n, o.alphabet, o.seed);
  fs::path path = o.out.empty() ? fs::path(instance_filename(o.n, o.seed)) : fs::path(o.out);
  save_instance(inst, path);
  out << path.string() << "\n";
}

// ---------------------------------------------------------------- blocks

struct BlocksOpts {
  std::string instance;
  int min_len = 1;
  bool histogram = false;
  std::string out;
};

void do_blocks(const BlocksOpts& o, std::ostream& out) {
  Instance inst = load_instance(o.instance);
  BlockSet blocks = filter_min_length(enumerate_blocks(inst), o.min_len);
  write_text(o.out, o.histogram ? histogram_csv(length_histogram(blocks)) : dump_blocks(blocks),
             out);
}

// ---------------------------------------------------------------- solve

struct SolveOpts {
  std::string instance;
  std::string algo;
  int l = 0;
  bool l_set = false;
  bool sweep = false;
  double time_limit = -1;  // <0: algorithm default
  double first_feasible = -1;
  int workers = 1;
  std::string json_out;
  std::string csv_out;
  std::string blocks_out;
};

json solve_result_json(const SolveResult& r) {
  json j;
  j["status"] = to_string(r.status);
  j["bound"] = r.bound;
  j["gap"] = number_or_null(r.incumbent ? std::optional<double>(r.gap) : std::nullopt);
  j["time_first_s"] = number_or_null(r.time_first_s);
  j["time_best_s"] = number_or_null(r.time_best_s);
  j["time_total_s"] = r.time_total_s;
  j["nodes"] = r.nodes;
  return j;
}

void do_solve(const SolveOpts& o, std::ostream& out) {
  Instance inst = load_instance(o.instance);
  BlockSet blocks = enumerate_blocks(inst);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["algorithm"] = o.algo;
  report["instance"] = {{"path", o.instance}, {"n", inst.n()}};
  report["block_count_total"] = blocks.size();

  std::vector<CommonBlock> solution;

  if (o.algo == "exact") {
    SolverConfig cfg;
    cfg.time_limit_s = o.time_limit >= 0 ? o.time_limit : 3600.0;
    if (o.first_feasible >= 0) cfg.stop_after_first_feasible_s = o.first_feasible;
    report["params"] = {{"time_limit_s", cfg.time_limit_s},
                        {"first_feasible_after_s", number_or_null(cfg.stop_after_first_feasible_s)}};
    SolveResult r = solve_min_partition(inst, blocks, {}, cfg);
    report.update(solve_result_json(r));
    if (r.incumbent) {
      solution = selection_blocks(blocks, *r.incumbent);
      report["objective"] = r.objective;
    } else {
      report["objective"] = nullptr;
    }
  } else if (o.algo == "greedy") {
    auto t0 = std::chrono::steady_clock::now();
    Partition p = greedy_partition(inst, blocks);
    double elapsed = seconds_since(t0);
    solution = selection_blocks(blocks, p);
    report["params"] = json::object();
    report["objective"] = p.size();
    report["status"] = "Heuristic";
    report["bound"] = nullptr;
    report["gap"] = nullptr;
    report["time_first_s"] = elapsed;
    report["time_best_s"] = elapsed;
    report["time_total_s"] = elapsed;
  } else {  // heuristic
    HeuristicConfig cfg;
    if (o.l_set) cfg.min_len = o.l;
    if (o.time_limit >= 0) cfg.per_solve.time_limit_s = o.time_limit;
    if (o.first_feasible >= 0) cfg.per_solve.stop_after_first_feasible_s = o.first_feasible;
    cfg.workers = o.workers;
    report["params"] = {
        {"l", o.l_set ? json(o.l) : json(nullptr)},
        {"sweep", !o.l_set},
        {"per_solve_time_limit_s",
         std::isfinite(cfg.per_solve.time_limit_s) ? json(cfg.per_solve.time_limit_s)
                                                   : json(nullptr)},
        {"first_feasible_after_s", number_or_null(cfg.per_solve.stop_after_first_feasible_s)},
        {"workers", cfg.workers}};
    auto t0 = std::chrono::steady_clock::now();
    SweepReport rep = sweep_min_len(inst, blocks, cfg);
    double elapsed = seconds_since(t0);
    solution = rep.best_blocks;
    report["objective"] = rep.best_objective;
    report["status"] = "Heuristic";
    report["bound"] = nullptr;
    report["gap"] = nullptr;
    report["time_first_s"] = nullptr;
    report["time_best_s"] = nullptr;
    report["time_total_s"] = elapsed;
    report["sweep"] = sweep_report_json(rep);
    if (!o.csv_out.empty()) write_text(o.csv_out, sweep_report_csv(rep), out);
  }

  if (!solution.empty() || o.algo != "exact") assert_complete(inst, solution);
  report["blocks"] = blocks_json(solution);

  if (o.json_out.empty())
    out << report.dump(2) << "\n";
  else
    write_text(o.json_out, report.dump(2) + "\n", out);
  if (!o.blocks_out.empty())
    write_text(o.blocks_out, dump_blocks(BlockSet::from_blocks(solution)), out);
}

// ---------------------------------------------------------------- export-lp / import-solution

struct ModelOpts {
  std::string instance;
  std::string model;  // orig | ph1 | ph2
  int l = 0;
  bool l_set = false;
  std::string phase1_solution;
  std::string out;
  std::string solution;  // import-solution only
};

IlpModel build_model(const ModelOpts& o, const Instance& inst) {
  BlockSet blocks = enumerate_blocks(inst);
  if (o.model == "orig") return build_ilp_orig(inst, blocks);
  if (o.model == "ph1") {
    if (!o.l_set) throw UsageError{"--l is required for the ph1 model"};
    return build_ilp_ph1(inst, filter_min_length(blocks, o.l), phase1_weight(inst));
  }
  // ph2
  if (o.phase1_solution.empty())
    throw UsageError{"--phase1-solution is required for the ph2 model"};
  std::vector<CommonBlock> forced = parse_block_list(read_file(o.phase1_solution));
  PartitionCheck check = validate_blocks(inst, forced);
  if (!check.ok())
    throw ValidationError("phase-1 solution file is not a valid partial solution: " +
                          check.reason);
  std::vector<CommonBlock> pool = forced;
  const BlockSet compat = compatible_blocks(blocks, check.partition);
  pool.insert(pool.end(), compat.begin(), compat.end());
  return build_ilp_ph2(inst, BlockSet::from_blocks(std::move(pool)), forced);
}

void do_export_lp(const ModelOpts& o, std::ostream& out) {
  Instance inst = load_instance(o.instance);
  IlpModel model = build_model(o, inst);
  std::ostringstream text;
  export_lp(model, text);
  write_text(o.out, text.str(), out);
}

void do_import_solution(const ModelOpts& o, std::ostream& out) {
  Instance inst = load_instance(o.instance);
  IlpModel model = build_model(o, inst);
  SolutionImport imported = import_solution(model, read_file(o.solution));
  PartitionCheck check = validate_blocks(inst, imported.blocks);
  if (!check.ok())
    throw ValidationError("imported assignment is not a valid selection: " + check.reason);

  long long objective = 0;
  for (int var : imported.variables) objective += model.objective[static_cast<std::size_t>(var)];
  json report = {{"schema_version", kSchemaVersion},
                 {"model", o.model},
                 {"instance", {{"path", o.instance}, {"n", inst.n()}}},
                 {"status", imported.status == PartitionStatus::Complete ? "Complete" : "Partial"},
                 {"selected", imported.variables.size()},
                 {"objective_value", objective},
                 {"blocks", blocks_json(imported.blocks)}};
  if (o.out.empty())
    out << report.dump(2) << "\n";
  else
    write_text(o.out, report.dump(2) + "\n", out);
}

// ---------------------------------------------------------------- bench

struct BenchOpts {
  std::string dir;
  std::string algos = "greedy,heuristic";
  int l = 0;
  bool l_set = false;
  double time_limit = -1;
  double first_feasible = -1;
  double budget = -1;  // <0: unlimited
  int workers = 1;
  std::string csv_out;
};

struct BenchRow {
  std::string instance;
  std::string algo;
  std::optional<long long> value;
  double time_s = 0;
  std::optional<double> gap;
  std::size_t block_count = 0;
};

std::vector<std::string> split_algos(const std::string& list) {
  std::vector<std::string> algos;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item != "exact" && item != "greedy" && item != "heuristic")
      throw UsageError{"unknown algorithm '" + item + "' (expected exact, greedy, heuristic)"};
    algos.push_back(item);
  }
  if (algos.empty()) throw UsageError{"--algo must name at least one algorithm"};
  return algos;
}

BenchRow bench_one(const BenchOpts& o, const std::string& name, const Instance& inst,
                   const BlockSet& blocks, const std::string& algo) {
  BenchRow row;
  row.instance = name;
  row.algo = algo;
  row.block_count = blocks.size();
  auto t0 = std::chrono::steady_clock::now();
  if (algo == "exact") {
    SolverConfig cfg;
    cfg.time_limit_s = o.time_limit >= 0 ? o.time_limit : 3600.0;
    if (o.first_feasible >= 0) cfg.stop_after_first_feasible_s = o.first_feasible;
    SolveResult r = solve_min_partition(inst, blocks, {}, cfg);
    if (r.incumbent) {
      row.value = r.objective;
      row.gap = r.gap;
    }
  } else if (algo == "greedy") {
    row.value = static_cast<long long>(greedy_partition(inst, blocks).size());
  } else {
    HeuristicConfig cfg;
    if (o.l_set) cfg.min_len = o.l;
    if (o.time_limit >= 0) cfg.per_solve.time_limit_s = o.time_limit;
    if (o.first_feasible >= 0) cfg.per_solve.stop_after_first_feasible_s = o.first_feasible;
    row.value = sweep_min_len(inst, blocks, cfg).best_objective;
  }
  row.time_s = seconds_since(t0);
  return row;
}

std::string bench_csv(const std::vector<BenchRow>& rows,
                      const std::vector<std::string>& algos) {
  std::ostringstream out;
  out << "instance,algorithm,value,time_s,gap,block_count\n";
  auto emit = [&out](const BenchRow& r) {
    out << r.instance << ',' << r.algo << ',';
    if (r.value) out << *r.value;
    out << ',' << r.time_s << ',';
    if (r.gap && std::isfinite(*r.gap)) out << *r.gap;
    out << ',' << r.block_count << '\n';
  };
  for (const BenchRow& r : rows) emit(r);
  // Averages, one row per algorithm, as in the benchmark tables.
  for (const std::string& algo : algos) {
    double value_sum = 0, time_sum = 0, gap_sum = 0, blocks_sum = 0;
    int n_rows = 0, n_values = 0, n_gaps = 0;
    for (const BenchRow& r : rows) {
      if (r.algo != algo) continue;
      ++n_rows;
      time_sum += r.time_s;
      blocks_sum += static_cast<double>(r.block_count);
      if (r.value) {
        value_sum += static_cast<double>(*r.value);
        ++n_values;
      }
      if (r.gap && std::isfinite(*r.gap)) {
        gap_sum += *r.gap;
        ++n_gaps;
      }
    }
    if (n_rows == 0) continue;
    out << "average," << algo << ',';
    if (n_values) out << value_sum / n_values;
    out << ',' << time_sum / n_rows << ',';
    if (n_gaps) out << gap_sum / n_gaps;
    out << ',' << blocks_sum / n_rows << '\n';
  }
  return out.str();
}

void do_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> algos = split_algos(o.algos);
  if (!fs::is_directory(o.dir)) throw InputError("not a directory: " + o.dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) err << "warning: no .txt instances in " << o.dir << "\n";

  auto t0 = std::chrono::steady_clock::now();
  auto budget_left = [&]() { return o.budget < 0 || seconds_since(t0) < o.budget; };

  std::vector<std::vector<BenchRow>> per_instance(files.size());
  std::mutex err_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      if (!budget_left()) continue;  // keep claiming so the queue drains
      const fs::path& path = files[i];
      try {
        Instance inst = load_instance(path);
        BlockSet blocks = enumerate_blocks(inst);
        for (const std::string& algo : algos) {
          if (!budget_left()) break;
          per_instance[i].push_back(
              bench_one(o, path.filename().string(), inst, blocks, algo));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        err << "warning: skipping " << path.string() << ": " << e.what() << "\n";
      }
    }
  };

  if (o.workers <= 1 || files.size() <= 1) {
    worker();
  } else {
    std::vector<std::future<void>> futures;
    int pool = std::min<int>(o.workers, static_cast<int>(files.size()));
    futures.reserve(static_cast<std::size_t>(pool));
    for (int w = 0; w < pool; ++w) futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  std::vector<BenchRow> rows;
  for (auto& group : per_instance)
    for (auto& row : group) rows.push_back(std::move(row));
  write_text(o.csv_out, bench_csv(rows, algos), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"minimum common string partition toolkit"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random related instance");
  gen_cmd->add_option("--n", gen.n, "string length")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--alphabet", gen.alphabet, "symbols to draw from (default ACGT)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed (default 1)");
  gen_cmd->add_option("--out", gen.out, "output path (default rand_<n>_<seed>.txt)");

  BlocksOpts blk;
  CLI::App* blocks_cmd = app.add_subcommand("blocks", "enumerate common blocks");
  blocks_cmd->add_option("instance", blk.instance, "instance file")->required();
  blocks_cmd->add_option("--min-len", blk.min_len, "keep blocks of at least this length");
  blocks_cmd->add_flag("--histogram", blk.histogram, "emit a length,count CSV instead");
  blocks_cmd->add_option("--out", blk.out, "output path (default stdout)");

  SolveOpts sol;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance");
  solve_cmd->add_option("instance", sol.instance, "instance file")->required();
  solve_cmd->add_option("--algo", sol.algo, "exact | greedy | heuristic")
      ->required()
      ->check(CLI::IsMember({"exact", "greedy", "heuristic"}));
  CLI::Option* sol_l =
      solve_cmd->add_option("--l", sol.l, "fixed minimum block length for the heuristic")
          ->check(CLI::Range(2, 1 << 20));
  CLI::Option* sol_sweep =
      solve_cmd->add_flag("--sweep", sol.sweep, "sweep the heuristic over all l (default)");
  sol_l->excludes(sol_sweep);
  sol_sweep->excludes(sol_l);
  solve_cmd->add_option("--time-limit", sol.time_limit,
                        "seconds per solve (exact default 3600, heuristic unlimited)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--first-feasible-after", sol.first_feasible,
                        "stop once this many seconds passed and a solution exists "
                        "(heuristic default 50)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--workers", sol.workers, "parallel sweep entries")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--json", sol.json_out, "write the JSON report here (default stdout)");
  solve_cmd->add_option("--csv", sol.csv_out, "write the per-l sweep CSV here");
  solve_cmd->add_option("--out", sol.blocks_out, "write the solution block list here");

  ModelOpts exp;
  CLI::App* export_cmd = app.add_subcommand("export-lp", "write an LP-format model file");
  export_cmd->add_option("instance", exp.instance, "instance file")->required();
  export_cmd->add_option("--model", exp.model, "orig | ph1 | ph2")
      ->required()
      ->check(CLI::IsMember({"orig", "ph1", "ph2"}));
  CLI::Option* exp_l = export_cmd->add_option("--l", exp.l, "minimum block length (ph1)")
                           ->check(CLI::Range(2, 1 << 20));
  export_cmd->add_option("--phase1-solution", exp.phase1_solution,
                         "block list file with the forced phase-1 blocks (ph2)");
  export_cmd->add_option("--out", exp.out, "output path (default stdout)");

  ModelOpts imp;
  CLI::App* import_cmd =
      app.add_subcommand("import-solution", "validate an external solver's assignment");
  import_cmd->add_option("instance", imp.instance, "instance file")->required();
  import_cmd->add_option("--model", imp.model, "orig | ph1 | ph2")
      ->required()
      ->check(CLI::IsMember({"orig", "ph1", "ph2"}));
  CLI::Option* imp_l = import_cmd->add_option("--l", imp.l, "minimum block length (ph1)")
                           ->check(CLI::Range(2, 1 << 20));
  import_cmd->add_option("--phase1-solution", imp.phase1_solution,
                         "block list file with the forced phase-1 blocks (ph2)");
  import_cmd->add_option("--solution", imp.solution, "assignment file: lines of <var> <0|1>")
      ->required();
  import_cmd->add_option("--out", imp.out, "output path (default stdout)");

  BenchOpts bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run algorithms over an instance directory");
  bench_cmd->add_option("dir", bench.dir, "directory of two-line instance files")->required();
  bench_cmd->add_option("--algo", bench.algos, "comma-separated list (default greedy,heuristic)");
  CLI::Option* bench_l =
      bench_cmd->add_option("--l", bench.l, "fixed minimum block length for the heuristic")
          ->check(CLI::Range(2, 1 << 20));
  bench_cmd->add_option("--time-limit", bench.time_limit, "seconds per solve")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--first-feasible-after", bench.first_feasible,
                        "per-solve first-feasible stop (heuristic default 50)")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--budget", bench.budget, "total wall-clock budget in seconds")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--workers", bench.workers, "concurrent instances")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bench.csv_out, "write the table here (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mcsp");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    sol.l_set = sol_l->count() > 0;
    exp.l_set = exp_l->count() > 0;
    imp.l_set = imp_l->count() > 0;
    bench.l_set = bench_l->count() > 0;
    if (*gen_cmd)
      do_gen(gen, out);
    else if (*blocks_cmd)
      do_blocks(blk, out);
    else if (*solve_cmd)
      do_solve(sol, out);
    else if (*export_cmd)
      do_export_lp(exp, out);
    else if (*import_cmd)
      do_import_solution(imp, out);
    else if (*bench_cmd)
      do_bench(bench, out, err);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace mcsp::cli
