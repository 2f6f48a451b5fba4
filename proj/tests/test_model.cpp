#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "mcsp/blocks.hpp"
#include "mcsp/instgen.hpp"
#include "mcsp/model.hpp"
#include "testutil.hpp"

using namespace mcsp;

namespace {

const LinearConstraint* find_row(const IlpModel& m, const std::string& name) {
  for (const LinearConstraint& c : m.constraints)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<int> row_vars(const LinearConstraint& c) {
  std::vector<int> v;
  for (const LinearTerm& t : c.terms) v.push_back(t.var);
  std::sort(v.begin(), v.end());
  return v;
}

IlpModel round_trip(const IlpModel& m) {
  std::ostringstream os;
  export_lp(m, os);
  std::istringstream is(os.str());
  return import_lp(is);
}

bool satisfies(const IlpModel& m, const std::vector<char>& x) {
  for (const LinearConstraint& c : m.constraints) {
    long long lhs = 0;
    for (const LinearTerm& t : c.terms) lhs += t.coeff * x[static_cast<std::size_t>(t.var)];
    if (c.relation == Relation::Equal ? lhs != c.rhs : lhs > c.rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("min-partition model on the worked example") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);
  IlpModel m = build_ilp_orig(ex, blocks);

  CHECK(m.sense == Sense::Minimize);
  CHECK(m.formulation == Formulation::MinPartition);
  CHECK(m.n == 6);
  CHECK(m.var_count() == 14);
  CHECK(m.constraints.size() == 13);  // length row + 6 + 6 position rows
  CHECK(m.fixed_ones.empty());
  for (long long c : m.objective) CHECK(c == 1);

  const LinearConstraint* len = find_row(m, "len");
  REQUIRE(len != nullptr);
  CHECK(len->relation == Relation::Equal);
  CHECK(len->rhs == 6);
  long long total_len = 0;
  for (const LinearTerm& t : len->terms) {
    CHECK(t.coeff == blocks[static_cast<std::size_t>(t.var)].len());
    total_len += t.coeff;
  }
  CHECK(total_len == 10 + 2 * 3 + 3);  // ten singletons, three pairs, one triple

  // Blocks covering s1 position 3: ACT(3,1), AC(3,1), A(3,1), A(3,4).
  const LinearConstraint* s1_3 = find_row(m, "s1_3");
  REQUIRE(s1_3 != nullptr);
  CHECK(s1_3->relation == Relation::Equal);
  CHECK(s1_3->rhs == 1);
  std::vector<CommonBlock> members;
  for (const LinearTerm& t : s1_3->terms) {
    CHECK(t.coeff == 1);
    members.push_back(blocks[static_cast<std::size_t>(t.var)]);
  }
  CHECK(BlockSet::from_blocks(members).blocks() ==
        BlockSet::from_blocks({{"ACT", 3, 1}, {"AC", 3, 1}, {"A", 3, 1}, {"A", 3, 4}})
            .blocks());

  // Every coverage row carries unit coefficients and rhs 1.
  for (const LinearConstraint& c : m.constraints) {
    if (c.name == "len") continue;
    CHECK(c.rhs == 1);
    for (const LinearTerm& t : c.terms) CHECK(t.coeff == 1);
  }
}

TEST_CASE("coverage row membership counts match block lengths") {
  Instance inst = generate_instance(60, "ACGT", 11);
  BlockSet blocks = enumerate_blocks(inst);
  IlpModel m = build_ilp_orig(inst, blocks);
  std::vector<int> appearances(static_cast<std::size_t>(m.var_count()), 0);
  for (const LinearConstraint& c : m.constraints) {
    if (c.name == "len") continue;
    for (const LinearTerm& t : c.terms) ++appearances[static_cast<std::size_t>(t.var)];
  }
  // A block of length L covers L positions in each string.
  for (std::size_t i = 0; i < blocks.size(); ++i)
    CHECK(appearances[i] == 2 * blocks[i].len());
}

TEST_CASE("one-symbol instance model") {
  Instance one("A", "A");
  IlpModel m = build_ilp_orig(one, enumerate_blocks(one));
  CHECK(m.var_count() == 1);
  CHECK(m.constraints.size() == 3);
  for (const LinearConstraint& c : m.constraints) {
    CHECK(c.rhs == 1);
    CHECK(row_vars(c) == std::vector<int>{0});
  }
}

TEST_CASE("phase-1 model on the worked example, l = 2") {
  Instance ex = testutil::example_instance();
  BlockSet pool = filter_min_length(enumerate_blocks(ex), 2);
  REQUIRE(pool.size() == 4);
  CHECK(phase1_weight(ex) == 7);
  IlpModel m = build_ilp_ph1(ex, pool, phase1_weight(ex));

  CHECK(m.sense == Sense::Maximize);
  CHECK(m.formulation == Formulation::MaxCoverage);
  CHECK(m.objective == std::vector<long long>{20, 13, 13, 13});

  // Positions s1_6 and s2_6 are touched by no block of length >= 2, so
  // their rows are dropped: length row plus five rows per string remain.
  CHECK(m.constraints.size() == 11);
  CHECK(find_row(m, "s1_6") == nullptr);
  CHECK(find_row(m, "s2_6") == nullptr);
  for (const LinearConstraint& c : m.constraints) CHECK(c.relation == Relation::LessEqual);
  const LinearConstraint* len = find_row(m, "len");
  REQUIRE(len != nullptr);
  CHECK(len->rhs == 6);
}

TEST_CASE("phase-1 model rejections") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);
  CHECK_THROWS_AS(build_ilp_ph1(ex, BlockSet{}, 7), ValidationError);
  CHECK_THROWS_AS(build_ilp_ph1(ex, blocks, 7), ValidationError);  // has length-1 blocks
  BlockSet pool = filter_min_length(blocks, 2);
  CHECK_THROWS_AS(build_ilp_ph1(ex, pool, 6), ValidationError);  // weight below n+1
  CHECK_NOTHROW(build_ilp_ph1(ex, pool, 7));
  CHECK_NOTHROW(build_ilp_ph1(ex, pool, 100));
}

TEST_CASE("completion model pins the forced blocks") {
  Instance ex = testutil::example_instance();
  std::vector<CommonBlock> forced{{"ACT", 3, 1}, {"AG", 1, 4}};
  // Pool: the forced blocks plus everything still placeable beside them.
  Partition partial(ex.n());
  partial.place(0, forced[0]);
  partial.place(1, forced[1]);
  std::vector<CommonBlock> pool_vec =
      compatible_blocks(enumerate_blocks(ex), partial).blocks();
  pool_vec.insert(pool_vec.end(), forced.begin(), forced.end());
  BlockSet pool = BlockSet::from_blocks(std::move(pool_vec));
  REQUIRE(pool.size() == 3);  // ACT, AG and the only free singleton (G,6,6)

  IlpModel m = build_ilp_ph2(ex, pool, forced);
  CHECK(m.sense == Sense::Minimize);
  CHECK(m.formulation == Formulation::Completion);
  CHECK(m.fixed_ones == std::vector<int>{0, 1});
  CHECK(m.constraints.size() == 15);  // 13 coverage rows + 2 fix rows

  const LinearConstraint* fix1 = find_row(m, "fix_x1");
  REQUIRE(fix1 != nullptr);
  CHECK(fix1->relation == Relation::Equal);
  CHECK(fix1->rhs == 1);
  CHECK(row_vars(*fix1) == std::vector<int>{0});
  CHECK(find_row(m, "fix_x2") != nullptr);
  CHECK(find_row(m, "fix_x3") == nullptr);
}

TEST_CASE("completion model rejections") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);
  // Mutually overlapping forced blocks.
  CHECK_THROWS_AS(build_ilp_ph2(ex, blocks, {{"ACT", 3, 1}, {"AC", 3, 1}}),
                  ValidationError);
  // Forced block missing from the pool.
  CHECK_THROWS_AS(build_ilp_ph2(ex, filter_min_length(blocks, 2), {{"G", 6, 6}}),
                  ValidationError);
}

TEST_CASE("completion with no forced blocks equals the original model") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);
  IlpModel a = build_ilp_orig(ex, blocks);
  IlpModel b = build_ilp_ph2(ex, blocks, {});
  CHECK(models_equivalent(a, b));
  CHECK(b.formulation == Formulation::Completion);
  CHECK(b.fixed_ones.empty());
}

TEST_CASE("LP export: header comment and golden fragments") {
  Instance ex = testutil::example_instance();
  IlpModel m = build_ilp_ph1(ex, filter_min_length(enumerate_blocks(ex), 2), 7);
  std::ostringstream os;
  export_lp(m, os);
  std::string text = os.str();
  CHECK(text.find("\\ mcsp max_coverage n=6 vars=4") != std::string::npos);
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find(" obj: 20 x1 + 13 x2 + 13 x3 + 13 x4") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find(" len: 3 x1 + 2 x2 + 2 x3 + 2 x4 <= 6") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
}

TEST_CASE("LP round-trip preserves the model") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);

  IlpModel orig = build_ilp_orig(ex, blocks);
  IlpModel back = round_trip(orig);
  CHECK(models_equivalent(orig, back));
  CHECK(back.formulation == Formulation::MinPartition);
  CHECK(back.n == 6);
  CHECK(back.blocks.empty());

  IlpModel ph1 = build_ilp_ph1(ex, filter_min_length(blocks, 2), 7);
  IlpModel ph1_back = round_trip(ph1);
  CHECK(models_equivalent(ph1, ph1_back));
  CHECK(ph1_back.formulation == Formulation::MaxCoverage);

  IlpModel ph2 = build_ilp_ph2(ex, blocks, {{"ACT", 3, 1}});
  IlpModel ph2_back = round_trip(ph2);
  CHECK(models_equivalent(ph2, ph2_back));
  CHECK(ph2_back.formulation == Formulation::Completion);
  CHECK(ph2_back.fixed_ones == std::vector<int>{0});
}

TEST_CASE("LP round-trip survives line wrapping on a large model") {
  Instance inst = generate_instance(200, "ACGT", 4);
  IlpModel m = build_ilp_orig(inst, enumerate_blocks(inst));
  std::ostringstream os;
  export_lp(m, os);
  std::string text = os.str();
  std::size_t longest = 0, start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    longest = std::max(longest, nl - start);
    start = nl + 1;
  }
  CHECK(longest <= 200);  // objective over ~13k variables must wrap
  std::istringstream is(text);
  CHECK(models_equivalent(m, import_lp(is)));
}

TEST_CASE("LP import rejections") {
  auto reject = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(import_lp(is), InputError);
  };
  reject("");                                     // no sense line
  reject("Minimize\n obj: x1\nEnd\n");            // missing sections
  reject("Minimize\n obj: x1\nSubject To\n r1: x1 >= 1\nBinaries\n x1\nEnd\n");
  reject("Minimize\n obj: x1\nSubject To\n r1: x1 = 1\nBinaries\n x2\nEnd\n");
  reject("Minimize\n obj: x1 + x3\nSubject To\n r1: x1 = 1\nBinaries\n x1 x3\nEnd\n");
  reject("Minimize\n obj: x1\nSubject To\n x1 = 1\nBinaries\n x1\nEnd\n");  // unnamed row
  reject("Maximize\n obj: q1\nSubject To\n r1: q1 = 1\nBinaries\n q1\nEnd\n");
  {
    // Well-formed input parses.
    std::istringstream is(
        "Minimize\n obj: x1 + x2\nSubject To\n len: 2 x1 + x2 = 2\nBinaries\n x1 x2\nEnd\n");
    IlpModel m = import_lp(is);
    CHECK(m.var_count() == 2);
    CHECK(m.n == 2);
  }
}

TEST_CASE("solution import on the worked example") {
  Instance ex = testutil::example_instance();
  BlockSet blocks = enumerate_blocks(ex);
  IlpModel m = build_ilp_orig(ex, blocks);

  SolutionImport full = import_solution(m, "x1 1\nx2 1\nx14 1\n");
  CHECK(full.status == PartitionStatus::Complete);
  CHECK(full.variables == std::vector<int>{0, 1, 13});
  CHECK(full.blocks == testutil::example_optimum());

  // Zeros may be listed explicitly and order is free.
  SolutionImport same = import_solution(m, "x14 1\nx3 0\nx2 1\nx1 1\n");
  CHECK(same.variables == full.variables);
}

TEST_CASE("solution import: partial assignments against phase-1 models") {
  Instance ex = testutil::example_instance();
  IlpModel ph1 = build_ilp_ph1(ex, filter_min_length(enumerate_blocks(ex), 2), 7);
  // All-zero satisfies every <= row but covers nothing.
  SolutionImport empty = import_solution(ph1, "");
  CHECK(empty.variables.empty());
  CHECK(empty.status == PartitionStatus::Partial);

  SolutionImport two = import_solution(ph1, "x1 1\nx2 1\n");
  CHECK(two.status == PartitionStatus::Partial);
  CHECK(two.blocks == std::vector<CommonBlock>{{"ACT", 3, 1}, {"AG", 1, 4}});
}

TEST_CASE("solution import rejections") {
  Instance ex = testutil::example_instance();
  IlpModel m = build_ilp_orig(ex, enumerate_blocks(ex));
  CHECK_THROWS_AS(import_solution(m, "x99 1\n"), InputError);   // unknown variable
  CHECK_THROWS_AS(import_solution(m, "y1 1\n"), InputError);    // foreign name
  CHECK_THROWS_AS(import_solution(m, "x1 0.5\n"), InputError);  // fractional
  CHECK_THROWS_AS(import_solution(m, "x1 2\n"), InputError);    // non-binary
  CHECK_THROWS_AS(import_solution(m, "x1 1\nx1 1\n"), InputError);  // duplicate
  CHECK_THROWS_AS(import_solution(m, "x1\n"), InputError);      // missing value
  // x1 and x3 both cover s1 position 3: violates that coverage row.
  CHECK_THROWS_AS(import_solution(m, "x1 1\nx3 1\n"), ValidationError);
  // Legal but incomplete selections violate the length row of this model.
  CHECK_THROWS_AS(import_solution(m, "x1 1\n"), ValidationError);
}

TEST_CASE("model feasibility coincides with complete valid partitions") {
  Instance inst("ABAB", "BABA");
  BlockSet blocks = enumerate_blocks(inst);
  REQUIRE(blocks.size() <= 16);
  IlpModel m = build_ilp_orig(inst, blocks);
  int feasible = 0;
  for (std::uint32_t mask = 0; mask < (1u << blocks.size()); ++mask) {
    std::vector<char> x(blocks.size(), 0);
    std::vector<CommonBlock> chosen;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (mask & (1u << i)) {
        x[i] = 1;
        chosen.push_back(blocks[i]);
      }
    bool ilp_ok = satisfies(m, x);
    bool part_ok = validate_blocks(inst, chosen).status == PartitionStatus::Complete;
    CHECK(ilp_ok == part_ok);
    feasible += ilp_ok;
  }
  CHECK(feasible > 0);
}
