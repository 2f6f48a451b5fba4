#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcsp/blocks.hpp"
#include "mcsp/cli.hpp"
#include "mcsp/core.hpp"
#include "testutil.hpp"

using namespace mcsp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Fresh scratch directory per process run.
fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mcsp_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_scratch(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p;
}

fs::path example_file() {
  static fs::path p = write_scratch("example.txt", "AGACTG\nACTAGG\n");
  return p;
}

}  // namespace

TEST_CASE("gen writes a loadable related instance and prints the path") {
  fs::path out = scratch_dir() / "gen.txt";
  CliResult r = run_cli({"gen", "--n", "24", "--seed", "5", "--out", out.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out == out.string() + "\n");
  Instance inst = load_instance(out);
  CHECK(inst.n() == 24);
  CHECK(is_related(inst.s1(), inst.s2()));

  // Same parameters, same bytes.
  fs::path out2 = scratch_dir() / "gen2.txt";
  REQUIRE(run_cli({"gen", "--n", "24", "--seed", "5", "--out", out2.string()}).code == 0);
  std::ifstream a(out), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("gen parameter validation") {
  CHECK(run_cli({"gen", "--n", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"gen", "--n", "-4"}).code == cli::kExitUsage);
  CHECK(run_cli({"gen"}).code == cli::kExitUsage);  // --n is required
  CliResult dup = run_cli({"gen", "--n", "10", "--alphabet", "AA",
                           "--out", (scratch_dir() / "x.txt").string()});
  CHECK(dup.code == cli::kExitValidation);
}

TEST_CASE("no subcommand or an unknown one is a usage error") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  // --help exits cleanly.
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("blocks dump on the worked example") {
  CliResult r = run_cli({"blocks", example_file().string()});
  REQUIRE(r.code == cli::kExitOk);
  std::vector<CommonBlock> blocks = parse_block_list(r.out);
  CHECK(blocks.size() == 14);
  CHECK(blocks.front() == CommonBlock{"ACT", 3, 1});
  CHECK(blocks.back() == CommonBlock{"G", 6, 6});

  CliResult filtered = run_cli({"blocks", example_file().string(), "--min-len", "2"});
  CHECK(parse_block_list(filtered.out).size() == 4);

  CliResult hist = run_cli({"blocks", example_file().string(), "--histogram"});
  CHECK(hist.out == "length,count\n1,10\n2,3\n3,1\n");

  fs::path out = scratch_dir() / "blocks.tsv";
  CliResult to_file = run_cli({"blocks", example_file().string(), "--out", out.string()});
  REQUIRE(to_file.code == cli::kExitOk);
  std::ifstream f(out);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(parse_block_list(buf.str()).size() == 14);
}

TEST_CASE("blocks input failures map to exit codes") {
  CHECK(run_cli({"blocks", (scratch_dir() / "missing.txt").string()}).code ==
        cli::kExitInput);
  fs::path unrelated = write_scratch("unrelated.txt", "AAB\nABB\n");
  CHECK(run_cli({"blocks", unrelated.string()}).code == cli::kExitValidation);
  fs::path one_line = write_scratch("oneline.txt", "ACGT\n");
  CHECK(run_cli({"blocks", one_line.string()}).code == cli::kExitInput);
  CHECK(run_cli({"blocks", example_file().string(), "--min-len", "0"}).code ==
        cli::kExitValidation);
}

TEST_CASE("solve exact emits a full report") {
  CliResult r = run_cli({"solve", example_file().string(), "--algo", "exact"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["algorithm"] == "exact");
  CHECK(j["instance"]["n"] == 6);
  CHECK(j["block_count_total"] == 14);
  CHECK(j["objective"] == 3);
  CHECK(j["status"] == "ProvenOptimal");
  CHECK(j["bound"] == 3);
  CHECK(j["gap"] == 0.0);
  CHECK(j["nodes"].get<std::uint64_t>() > 0);
  CHECK(j["params"]["time_limit_s"] == 3600.0);
  REQUIRE(j["blocks"].size() == 3);
  CHECK(j["blocks"][0]["text"] == "ACT");
  CHECK(j["blocks"][0]["k1"] == 3);
  CHECK(j["blocks"][0]["k2"] == 1);
}

TEST_CASE("solve greedy emits a heuristic report") {
  CliResult r = run_cli({"solve", example_file().string(), "--algo", "greedy"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["algorithm"] == "greedy");
  CHECK(j["objective"] == 3);
  CHECK(j["status"] == "Heuristic");
  CHECK(j["bound"].is_null());
  CHECK(j["gap"].is_null());
  CHECK(j["blocks"].size() == 3);
}

TEST_CASE("solve heuristic sweeps by default") {
  CliResult r = run_cli({"solve", example_file().string(), "--algo", "heuristic"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["objective"] == 3);
  CHECK(j["params"]["sweep"] == true);
  CHECK(j["params"]["l"].is_null());
  CHECK(j["sweep"]["best_l"] == 2);
  CHECK(j["sweep"]["entries"].size() == 2);
  CHECK(j["sweep"]["singleton_fallback"] == false);
}

TEST_CASE("solve heuristic with a fixed l") {
  fs::path csv = scratch_dir() / "sweep.csv";
  fs::path report = scratch_dir() / "report.json";
  fs::path blocks_out = scratch_dir() / "solution.tsv";
  CliResult r = run_cli({"solve", example_file().string(), "--algo", "heuristic",
                         "--l", "3", "--json", report.string(), "--csv", csv.string(),
                         "--out", blocks_out.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());  // everything went to files

  std::ifstream jf(report);
  json j = json::parse(jf);
  CHECK(j["params"]["l"] == 3);
  CHECK(j["params"]["sweep"] == false);
  CHECK(j["sweep"]["entries"].size() == 1);
  CHECK(j["objective"] == 3);

  std::ifstream cf(csv);
  std::string header;
  REQUIRE(std::getline(cf, header));
  CHECK(header.rfind("l,phase1_blocks", 0) == 0);

  std::ifstream bf(blocks_out);
  std::stringstream buf;
  buf << bf.rdbuf();
  CHECK(parse_block_list(buf.str()).size() == 3);
}

TEST_CASE("solve flag validation") {
  const std::string ex = example_file().string();
  CHECK(run_cli({"solve", ex}).code == cli::kExitUsage);  // --algo required
  CHECK(run_cli({"solve", ex, "--algo", "annealing"}).code == cli::kExitUsage);
  CHECK(run_cli({"solve", ex, "--algo", "heuristic", "--l", "1"}).code == cli::kExitUsage);
  CHECK(run_cli({"solve", ex, "--algo", "heuristic", "--l", "2", "--sweep"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({"solve", ex, "--algo", "exact", "--time-limit", "-1"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({"solve", (scratch_dir() / "nope.txt").string(), "--algo", "greedy"})
            .code == cli::kExitInput);
}

TEST_CASE("export-lp writes the three model shapes") {
  const std::string ex = example_file().string();
  CliResult orig = run_cli({"export-lp", ex, "--model", "orig"});
  REQUIRE(orig.code == cli::kExitOk);
  CHECK(orig.out.find("\\ mcsp min_partition n=6 vars=14") != std::string::npos);
  CHECK(orig.out.find("Minimize") != std::string::npos);
  CHECK(orig.out.find("len:") != std::string::npos);

  CliResult ph1 = run_cli({"export-lp", ex, "--model", "ph1", "--l", "2"});
  REQUIRE(ph1.code == cli::kExitOk);
  CHECK(ph1.out.find("\\ mcsp max_coverage n=6 vars=4") != std::string::npos);
  CHECK(ph1.out.find(" obj: 20 x1 + 13 x2 + 13 x3 + 13 x4") != std::string::npos);

  fs::path forced = write_scratch("forced.tsv", "ACT\t3\t1\nAG\t1\t4\n");
  CliResult ph2 = run_cli({"export-lp", ex, "--model", "ph2",
                           "--phase1-solution", forced.string()});
  REQUIRE(ph2.code == cli::kExitOk);
  CHECK(ph2.out.find("\\ mcsp completion n=6 vars=3") != std::string::npos);
  CHECK(ph2.out.find("fix_x1:") != std::string::npos);
  CHECK(ph2.out.find("fix_x2:") != std::string::npos);

  fs::path lp = scratch_dir() / "model.lp";
  REQUIRE(run_cli({"export-lp", ex, "--model", "orig", "--out", lp.string()}).code == 0);
  CHECK(fs::file_size(lp) > 100);
}

TEST_CASE("export-lp parameter validation") {
  const std::string ex = example_file().string();
  CHECK(run_cli({"export-lp", ex, "--model", "ph1"}).code == cli::kExitUsage);
  CHECK(run_cli({"export-lp", ex, "--model", "ph2"}).code == cli::kExitUsage);
  CHECK(run_cli({"export-lp", ex, "--model", "qp"}).code == cli::kExitUsage);
  // Forced blocks that overlap each other are a validation failure.
  fs::path bad = write_scratch("bad_forced.tsv", "ACT\t3\t1\nAC\t3\t1\n");
  CHECK(run_cli({"export-lp", ex, "--model", "ph2", "--phase1-solution", bad.string()})
            .code == cli::kExitValidation);
  // --l too large for the instance leaves ph1 with no blocks.
  CHECK(run_cli({"export-lp", ex, "--model", "ph1", "--l", "4"}).code ==
        cli::kExitValidation);
}

TEST_CASE("import-solution round trip") {
  const std::string ex = example_file().string();
  fs::path sol = write_scratch("assign.txt", "x1 1\nx2 1\nx14 1\n");
  CliResult r = run_cli({"import-solution", ex, "--model", "orig",
                         "--solution", sol.string()});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["model"] == "orig");
  CHECK(j["status"] == "Complete");
  CHECK(j["selected"] == 3);
  CHECK(j["objective_value"] == 3);
  REQUIRE(j["blocks"].size() == 3);
  CHECK(j["blocks"][0]["text"] == "ACT");

  // Partial assignments are fine against the relaxed phase-1 model.
  fs::path partial = write_scratch("assign_ph1.txt", "x1 1\n");
  CliResult ph1 = run_cli({"import-solution", ex, "--model", "ph1", "--l", "2",
                           "--solution", partial.string()});
  REQUIRE(ph1.code == cli::kExitOk);
  CHECK(json::parse(ph1.out)["status"] == "Partial");
}

TEST_CASE("import-solution failures") {
  const std::string ex = example_file().string();
  fs::path overlap = write_scratch("overlap.txt", "x1 1\nx3 1\n");
  CHECK(run_cli({"import-solution", ex, "--model", "orig",
                 "--solution", overlap.string()}).code == cli::kExitValidation);
  fs::path unknown = write_scratch("unknown.txt", "x99 1\n");
  CHECK(run_cli({"import-solution", ex, "--model", "orig",
                 "--solution", unknown.string()}).code == cli::kExitInput);
  fs::path frac = write_scratch("frac.txt", "x1 0.5\n");
  CHECK(run_cli({"import-solution", ex, "--model", "orig",
                 "--solution", frac.string()}).code == cli::kExitInput);
  CHECK(run_cli({"import-solution", ex, "--model", "orig"}).code == cli::kExitUsage);
  CHECK(run_cli({"import-solution", ex, "--model", "orig", "--solution",
                 (scratch_dir() / "ghost.txt").string()}).code == cli::kExitInput);
}

TEST_CASE("bench runs a directory and reports averages") {
  fs::path dir = scratch_dir() / "bench";
  fs::create_directories(dir);
  for (int seed : {1, 2, 3}) {
    CliResult g = run_cli({"gen", "--n", "16", "--seed", std::to_string(seed),
                           "--out", (dir / ("i" + std::to_string(seed) + ".txt")).string()});
    REQUIRE(g.code == cli::kExitOk);
  }
  fs::path csv = dir / "table.csv";  // non-.txt files must be ignored
  CliResult r = run_cli({"bench", dir.string(), "--algo", "greedy,exact",
                         "--workers", "2", "--csv", csv.string()});
  REQUIRE(r.code == cli::kExitOk);

  std::ifstream f(csv);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line == "instance,algorithm,value,time_s,gap,block_count");
  std::vector<std::string> rows;
  while (std::getline(f, line)) rows.push_back(line);
  REQUIRE(rows.size() == 8);  // 3 instances x 2 algos + 2 averages
  CHECK(rows[0].rfind("i1.txt,greedy,", 0) == 0);
  CHECK(rows[1].rfind("i1.txt,exact,", 0) == 0);
  CHECK(rows[2].rfind("i2.txt,greedy,", 0) == 0);
  CHECK(rows[6].rfind("average,greedy,", 0) == 0);
  CHECK(rows[7].rfind("average,exact,", 0) == 0);

  // Greedy and exact objectives agree on these tiny instances or differ by +.
  // Parse one value column to confirm the table carries numbers.
  std::string first_value = rows[0].substr(std::string("i1.txt,greedy,").size());
  CHECK(std::stoi(first_value) >= 1);
}

TEST_CASE("bench tolerates bad instances and empty directories") {
  fs::path dir = scratch_dir() / "bench_bad";
  fs::create_directories(dir);
  write_scratch("bench_bad/broken.txt", "only one line\n");
  fs::path ok = dir / "ok.txt";
  REQUIRE(run_cli({"gen", "--n", "12", "--seed", "9", "--out", ok.string()}).code == 0);
  CliResult r = run_cli({"bench", dir.string(), "--algo", "greedy"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.err.find("skipping") != std::string::npos);
  CHECK(r.out.find("ok.txt,greedy,") != std::string::npos);
  CHECK(r.out.find("broken") == std::string::npos);

  fs::path empty = scratch_dir() / "bench_empty";
  fs::create_directories(empty);
  CliResult e = run_cli({"bench", empty.string()});
  CHECK(e.code == cli::kExitOk);
  CHECK(e.err.find("warning: no .txt instances") != std::string::npos);
  CHECK(e.out == "instance,algorithm,value,time_s,gap,block_count\n");
}

TEST_CASE("bench parameter validation") {
  CHECK(run_cli({"bench", (scratch_dir() / "no_dir").string()}).code == cli::kExitInput);
  fs::path dir = scratch_dir() / "bench_args";
  fs::create_directories(dir);
  CHECK(run_cli({"bench", dir.string(), "--algo", "simplex"}).code == cli::kExitUsage);
  CHECK(run_cli({"bench", dir.string(), "--algo", ""}).code == cli::kExitUsage);
  CHECK(run_cli({"bench", dir.string(), "--budget", "-2"}).code == cli::kExitUsage);
}

TEST_CASE("bench respects a zero budget") {
  fs::path dir = scratch_dir() / "bench_budget";
  fs::create_directories(dir);
  REQUIRE(run_cli({"gen", "--n", "16", "--seed", "2",
                   "--out", (dir / "a.txt").string()}).code == 0);
  CliResult r = run_cli({"bench", dir.string(), "--algo", "greedy", "--budget", "0"});
  REQUIRE(r.code == cli::kExitOk);
  // Header only: the budget was exhausted before any solve started.
  CHECK(r.out == "instance,algorithm,value,time_s,gap,block_count\n");
}

TEST_CASE("argc/argv entry point matches the vector overload") {
  const char* argv[] = {"mcsp", "blocks", nullptr};
  // Missing required positional: usage error, not a crash.
  CHECK(cli::run(2, argv) == cli::kExitUsage);
}
