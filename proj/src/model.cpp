#include "mcsp/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace mcsp {

long long phase1_weight(const Instance& inst) { return inst.n() + 1LL; }

namespace {

void check_blocks_consistent(const Instance& inst, const BlockSet& blocks) {
  for (const CommonBlock& b : blocks)
    if (!block_consistent(inst, b))
      throw ValidationError("block set inconsistent with instance at (" + b.text + "," +
                            std::to_string(b.k1) + "," + std::to_string(b.k2) + ")");
}

// Length row followed by per-position coverage rows for s1 then s2.
// Positions no block touches produce no row (empty sums arise only in the
// phase-1 model and are vacuous there).
void append_rows(const BlockSet& blocks, int n, Relation rel, IlpModel& model) {
  LinearConstraint len_row;
  len_row.name = "len";
  len_row.relation = rel;
  len_row.rhs = n;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    len_row.terms.push_back({static_cast<int>(i), blocks[i].len()});
  model.constraints.push_back(std::move(len_row));

  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> rows1(un + 1), rows2(un + 1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const CommonBlock& b = blocks[i];
    for (int j = b.k1; j <= b.end1(); ++j) rows1[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    for (int j = b.k2; j <= b.end2(); ++j) rows2[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
  }
  for (int str = 1; str <= 2; ++str) {
    const auto& rows = (str == 1) ? rows1 : rows2;
    for (int j = 1; j <= n; ++j) {
      const auto& row = rows[static_cast<std::size_t>(j)];
      if (row.empty()) continue;
      LinearConstraint c;
      c.name = "s" + std::to_string(str) + "_" + std::to_string(j);
      c.relation = rel;
      c.rhs = 1;
      for (int var : row) c.terms.push_back({var, 1});
      model.constraints.push_back(std::move(c));
    }
  }
}

}  // namespace

IlpModel build_ilp_orig(const Instance& inst, const BlockSet& blocks) {
  check_blocks_consistent(inst, blocks);
  IlpModel model;
  model.sense = Sense::Minimize;
  model.formulation = Formulation::MinPartition;
  model.n = inst.n();
  model.objective.assign(blocks.size(), 1);
  model.blocks = blocks;
  append_rows(blocks, inst.n(), Relation::Equal, model);
  return model;
}

IlpModel build_ilp_ph1(const Instance& inst, const BlockSet& blocks, long long weight) {
  if (blocks.empty())
    throw ValidationError("phase-1 block set is empty: minimum length exceeds the longest block");
  for (const CommonBlock& b : blocks)
    if (b.len() < 2)
      throw ValidationError("phase-1 block set must only contain blocks of length >= 2");
  if (weight < inst.n() + 1LL)
    throw ValidationError("phase-1 weight constant must be >= n+1 = " +
                          std::to_string(inst.n() + 1LL));
  check_blocks_consistent(inst, blocks);
  IlpModel model;
  model.sense = Sense::Maximize;
  model.formulation = Formulation::MaxCoverage;
  model.n = inst.n();
  model.objective.reserve(blocks.size());
  for (const CommonBlock& b : blocks) model.objective.push_back(weight * b.len() - 1);
  model.blocks = blocks;
  append_rows(blocks, inst.n(), Relation::LessEqual, model);
  return model;
}

IlpModel build_ilp_ph2(const Instance& inst, const BlockSet& blocks,
                       const std::vector<CommonBlock>& forced) {
  IlpModel model = build_ilp_orig(inst, blocks);
  model.formulation = Formulation::Completion;
  Partition partial(inst.n());
  for (const CommonBlock& b : forced) {
    auto idx = blocks.find(b);
    if (!idx)
      throw ValidationError("forced block (" + b.text + "," + std::to_string(b.k1) + "," +
                            std::to_string(b.k2) + ") is not in the block set");
    partial.place(static_cast<int>(*idx), b);  // throws on mutual overlap
    model.fixed_ones.push_back(static_cast<int>(*idx));
  }
  std::sort(model.fixed_ones.begin(), model.fixed_ones.end());
  for (int var : model.fixed_ones) {
    LinearConstraint c;
    c.name = "fix_" + IlpModel::var_name(var);
    c.terms.push_back({var, 1});
    c.relation = Relation::Equal;
    c.rhs = 1;
    model.constraints.push_back(std::move(c));
  }
  return model;
}

namespace {

const char* formulation_tag(Formulation f) {
  switch (f) {
    case Formulation::MinPartition: return "min_partition";
    case Formulation::MaxCoverage: return "max_coverage";
    case Formulation::Completion: return "completion";
  }
  return "?";
}

constexpr std::size_t kWrapColumn = 200;

void write_wrapped(std::ostream& out, const std::string& head,
                   const std::vector<std::string>& pieces) {
  std::size_t col = head.size();
  out << head;
  for (const std::string& p : pieces) {
    if (col + 1 + p.size() > kWrapColumn) {
      out << "\n  ";
      col = 2;
    } else {
      out << ' ';
      ++col;
    }
    out << p;
    col += p.size();
  }
  out << '\n';
}

std::string term_piece(const LinearTerm& t, bool first) {
  std::string s;
  if (t.coeff < 0)
    s = "- ";
  else if (!first)
    s = "+ ";
  long long mag = std::llabs(t.coeff);
  if (mag != 1) s += std::to_string(mag) + " ";
  s += IlpModel::var_name(t.var);
  return s;
}

std::vector<std::string> expr_pieces(const std::vector<LinearTerm>& terms) {
  std::vector<std::string> pieces;
  pieces.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    pieces.push_back(term_piece(terms[i], i == 0));
  return pieces;
}

}  // namespace

void export_lp(const IlpModel& model, std::ostream& out) {
  out << "\\ mcsp " << formulation_tag(model.formulation) << " n=" << model.n
      << " vars=" << model.var_count() << "\n";
  out << (model.sense == Sense::Minimize ? "Minimize" : "Maximize") << "\n";
  std::vector<LinearTerm> obj_terms;
  obj_terms.reserve(model.objective.size());
  for (int i = 0; i < model.var_count(); ++i)
    if (model.objective[static_cast<std::size_t>(i)] != 0)
      obj_terms.push_back({i, model.objective[static_cast<std::size_t>(i)]});
  write_wrapped(out, " obj:", expr_pieces(obj_terms));
  out << "Subject To\n";
  for (const LinearConstraint& c : model.constraints) {
    std::vector<std::string> pieces = expr_pieces(c.terms);
    pieces.push_back(std::string(c.relation == Relation::Equal ? "=" : "<=") + " " +
                     std::to_string(c.rhs));
    write_wrapped(out, " " + c.name + ":", pieces);
  }
  out << "Binaries\n";
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(model.var_count()));
  for (int i = 0; i < model.var_count(); ++i) names.push_back(IlpModel::var_name(i));
  write_wrapped(out, "", names);
  out << "End\n";
}

void export_lp_file(const IlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write LP file: " + path.string());
  export_lp(model, out);
  if (!out) throw InputError("write failure on LP file: " + path.string());
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> lp_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('\\'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

bool parse_int(const std::string& s, long long& value) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  value = std::stoll(s);
  return true;
}

// Variable names are restricted to the exporter's own scheme.
bool parse_var(const std::string& s, int& var) {
  if (s.size() < 2 || s[0] != 'x' || s[1] == '0') return false;
  long long idx = 0;
  if (!parse_int(s.substr(1), idx) || idx < 1) return false;
  var = static_cast<int>(idx) - 1;
  return true;
}

class LpParser {
 public:
  explicit LpParser(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

  IlpModel parse() {
    IlpModel model;
    std::string sense = lower(next("objective sense"));
    if (sense == "minimize" || sense == "min")
      model.sense = Sense::Minimize;
    else if (sense == "maximize" || sense == "max")
      model.sense = Sense::Maximize;
    else
      throw InputError("LP parse: expected Minimize/Maximize, got '" + sense + "'");

    std::string obj_label = next("objective label");
    if (obj_label.back() == ':') obj_label.pop_back();
    std::map<int, long long> obj;
    parse_expr(obj, /*until_relop=*/false);

    while (!peek_section()) {
      std::string label = next("constraint label");
      if (label.back() != ':')
        throw InputError("LP parse: expected a 'name:' label, got '" + label + "'");
      label.pop_back();
      LinearConstraint c;
      c.name = label;
      std::map<int, long long> terms;
      std::string relop = parse_expr(terms, /*until_relop=*/true);
      if (relop == "=")
        c.relation = Relation::Equal;
      else if (relop == "<=" || relop == "=<" || relop == "<")
        c.relation = Relation::LessEqual;
      else
        throw InputError("LP parse: unsupported comparator '" + relop + "'");
      long long rhs = 0;
      if (!parse_int(next("right-hand side"), rhs))
        throw InputError("LP parse: right-hand side must be an integer in row " + c.name);
      c.rhs = rhs;
      for (auto [var, coeff] : terms) c.terms.push_back({var, coeff});
      model.constraints.push_back(std::move(c));
    }

    std::string section = lower(next("section"));
    if (section != "binaries" && section != "binary" && section != "bin")
      throw InputError("LP parse: only binary variables are supported, got section '" +
                       section + "'");
    std::vector<char> declared;
    while (true) {
      std::string tok = next("binary declaration or End");
      if (lower(tok) == "end") break;
      int var = 0;
      if (!parse_var(tok, var))
        throw InputError("LP parse: bad variable name '" + tok + "' in Binaries");
      if (static_cast<std::size_t>(var) >= declared.size())
        declared.resize(static_cast<std::size_t>(var) + 1, 0);
      declared[static_cast<std::size_t>(var)] = 1;
    }
    if (declared.empty()) throw InputError("LP parse: no binary variables declared");
    for (std::size_t i = 0; i < declared.size(); ++i)
      if (!declared[i])
        throw InputError("LP parse: variable x" + std::to_string(i + 1) +
                         " missing from Binaries; x1..xm must be contiguous");
    const int m = static_cast<int>(declared.size());

    model.objective.assign(static_cast<std::size_t>(m), 0);
    for (auto [var, coeff] : obj) {
      if (var >= m) throw InputError("LP parse: objective references undeclared variable");
      model.objective[static_cast<std::size_t>(var)] = coeff;
    }
    for (auto& c : model.constraints) {
      for (auto& t : c.terms)
        if (t.var >= m)
          throw InputError("LP parse: row " + c.name + " references undeclared variable");
      if (c.name.rfind("fix", 0) == 0 && c.relation == Relation::Equal && c.rhs == 1 &&
          c.terms.size() == 1 && c.terms[0].coeff == 1)
        model.fixed_ones.push_back(c.terms[0].var);
    }
    if (model.sense == Sense::Maximize)
      model.formulation = Formulation::MaxCoverage;
    else
      model.formulation =
          model.fixed_ones.empty() ? Formulation::MinPartition : Formulation::Completion;
    for (const auto& c : model.constraints)
      if (c.name == "len") model.n = static_cast<int>(c.rhs);
    return model;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const std::string& next(const char* what) {
    if (at_end()) throw InputError(std::string("LP parse: unexpected end of file, wanted ") + what);
    return tokens_[pos_++];
  }

  bool peek_section() const {
    if (at_end()) return true;
    std::string t = lower(tokens_[pos_]);
    return t == "binaries" || t == "binary" || t == "bin" || t == "bounds" ||
           t == "general" || t == "generals" || t == "end";
  }

  // Accumulates terms; returns the comparator when until_relop, otherwise
  // stops (without consuming) at "Subject To" / "st" / "s.t.".
  std::string parse_expr(std::map<int, long long>& terms, bool until_relop) {
    long long sign = 1;
    long long coeff = 1;
    bool have_coeff = false;
    while (true) {
      if (at_end()) {
        if (until_relop) throw InputError("LP parse: row ended without comparator");
        break;
      }
      const std::string& tok = tokens_[pos_];
      std::string low = lower(tok);
      if (!until_relop &&
          (low == "subject" || low == "st" || low == "s.t." || low == "such")) {
        ++pos_;
        if (low == "subject" || low == "such") {
          if (lower(next("'To' after 'Subject'")) != "to")
            throw InputError("LP parse: expected 'To' after 'Subject'");
        }
        break;
      }
      if (until_relop && (tok == "=" || tok == "<=" || tok == "=<" || tok == "<" ||
                          tok == ">=" || tok == "=>" || tok == ">")) {
        ++pos_;
        if (have_coeff || sign != 1)
          throw InputError("LP parse: dangling coefficient before comparator");
        return tok;
      }
      ++pos_;
      if (tok == "+") {
        continue;
      }
      if (tok == "-") {
        sign = -sign;
        continue;
      }
      long long value = 0;
      int var = 0;
      if (parse_int(tok, value)) {
        if (have_coeff) throw InputError("LP parse: two coefficients in a row: '" + tok + "'");
        coeff = value;
        have_coeff = true;
      } else if (parse_var(tok, var)) {
        terms[var] += sign * (have_coeff ? coeff : 1);
        sign = 1;
        have_coeff = false;
      } else {
        throw InputError("LP parse: unexpected token '" + tok + "'");
      }
    }
    if (have_coeff || sign != 1)
      throw InputError("LP parse: dangling coefficient in expression");
    return "";
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

IlpModel import_lp(std::istream& in) { return LpParser(lp_tokens(in)).parse(); }

IlpModel import_lp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open LP file: " + path.string());
  return import_lp(in);
}

namespace {

std::map<int, long long> term_map(const std::vector<LinearTerm>& terms) {
  std::map<int, long long> m;
  for (const LinearTerm& t : terms) m[t.var] += t.coeff;
  return m;
}

}  // namespace

bool models_equivalent(const IlpModel& a, const IlpModel& b) {
  if (a.sense != b.sense || a.objective != b.objective ||
      a.constraints.size() != b.constraints.size())
    return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const auto& ca = a.constraints[i];
    const auto& cb = b.constraints[i];
    if (ca.name != cb.name || ca.relation != cb.relation || ca.rhs != cb.rhs ||
        term_map(ca.terms) != term_map(cb.terms))
      return false;
  }
  return true;
}

SolutionImport import_solution(const IlpModel& model, const std::string& assignment) {
  std::vector<char> value(static_cast<std::size_t>(model.var_count()), 0);
  std::vector<char> seen(static_cast<std::size_t>(model.var_count()), 0);
  std::istringstream in(assignment);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string name, val;
    if (!(ls >> name)) continue;  // blank line
    if (!(ls >> val))
      throw InputError("solution line " + std::to_string(lineno) + ": missing value");
    std::string extra;
    if (ls >> extra)
      throw InputError("solution line " + std::to_string(lineno) + ": trailing tokens");
    int var = 0;
    if (!parse_var(name, var) || var >= model.var_count())
      throw InputError("solution line " + std::to_string(lineno) + ": unknown variable '" +
                       name + "'");
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("solution line " + std::to_string(lineno) + ": bad value '" + val + "'");
    }
    int rounded;
    if (std::abs(v) <= 1e-6)
      rounded = 0;
    else if (std::abs(v - 1.0) <= 1e-6)
      rounded = 1;
    else
      throw InputError("solution line " + std::to_string(lineno) + ": fractional value " + val);
    if (seen[static_cast<std::size_t>(var)])
      throw InputError("solution line " + std::to_string(lineno) + ": variable '" + name +
                       "' listed twice");
    seen[static_cast<std::size_t>(var)] = 1;
    value[static_cast<std::size_t>(var)] = static_cast<char>(rounded);
  }

  for (const LinearConstraint& c : model.constraints) {
    long long lhs = 0;
    for (const LinearTerm& t : c.terms) lhs += t.coeff * value[static_cast<std::size_t>(t.var)];
    bool ok = (c.relation == Relation::Equal) ? (lhs == c.rhs) : (lhs <= c.rhs);
    if (!ok)
      throw ValidationError("assignment violates constraint " + c.name + ": " +
                            std::to_string(lhs) +
                            (c.relation == Relation::Equal ? " != " : " > ") +
                            std::to_string(c.rhs));
  }

  SolutionImport result;
  for (int i = 0; i < model.var_count(); ++i)
    if (value[static_cast<std::size_t>(i)]) result.variables.push_back(i);
  if (!model.blocks.empty()) {
    Partition p(model.n);
    for (int i : result.variables) {
      result.blocks.push_back(model.blocks[static_cast<std::size_t>(i)]);
      p.place(i, model.blocks[static_cast<std::size_t>(i)]);
    }
    result.status = p.complete() ? PartitionStatus::Complete : PartitionStatus::Partial;
  }
  return result;
}

}  // namespace mcsp
