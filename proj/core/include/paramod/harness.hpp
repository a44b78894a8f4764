#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramod/arith.hpp"
#include "paramod/fieldoracle.hpp"
#include "paramod/galois2.hpp"
#include "paramod/polyfield.hpp"
#include "paramod/sieve.hpp"

namespace paramod {

class TableLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table1Row {
  i64 N = 0;
  std::vector<InfoCode> why;

  bool operator==(const Table1Row&) const = default;
};

struct Table2Row {
  enum class Kind { Polynomial, Prym, WeilRestriction };
  std::string id;  // N with optional a/b suffix
  i64 N = 0;
  Kind kind = Kind::Polynomial;
  std::optional<IntPoly> poly;
  InfoCode info;
  std::vector<std::string> flags;  // notSS, mild@m

  bool not_semistable() const;
  std::optional<i64> mild_modulus() const;
  bool operator==(const Table2Row&) const = default;
};

std::vector<Table1Row> parse_table1(std::istream& in, const std::string& source = "<memory>");
std::vector<Table2Row> parse_table2(std::istream& in, const std::string& source = "<memory>");
std::vector<Table1Row> load_table1(const std::string& path);
std::vector<Table2Row> load_table2(const std::string& path);
std::string serialize_table1(const std::vector<Table1Row>& rows);
std::string serialize_table2(const std::vector<Table2Row>& rows);

struct Tables {
  std::vector<Table1Row> table1;
  std::vector<Table2Row> table2;
};

// PARAMOD_DATA overrides the compiled-in data directory.
std::string data_dir();
// PARAMOD_ORACLE overrides <data_dir>/oracle.tsv.
std::string default_oracle_path();
Tables load_tables(const std::string& dir = data_dir());

// Odd non-square N in [lo, hi], evaluated on up to `threads` workers; ordered by N.
std::vector<SieveReport> sweep(i64 lo, i64 hi, const FieldOracle& oracle, unsigned threads = 0);

struct Table2Result {
  std::string id;
  enum class Status { Pass, Fail, Skipped } status = Status::Pass;
  std::string expected;
  std::string classified;
  bool classification_ok = false;
  bool disc_ok = false;
  std::optional<bool> mild_ok;
  int euler_checks = 0;
  int purity_checks = 0;
  double max_purity_defect = 0;
  std::vector<std::string> failures;  // each carries its witness
};

struct Table2Report {
  std::vector<Table2Result> rows;
  i64 prime_bound = 0;
  i64 euler_prime_bound = 0;

  int failures() const;
  int euler_checks() const;
  std::string text() const;
  std::string json(int indent = 2) const;
};

Table2Report verify_table2(const std::vector<Table2Row>& rows, i64 prime_bound = 2000, i64 euler_prime_bound = 200,
                           unsigned threads = 0);
Table2Result verify_table2_row(const Table2Row& row, i64 prime_bound, i64 euler_prime_bound);

struct SurvivorEntry {
  i64 N = 0;
  InfoCode structure;
  std::string note;  // rule or residue explanation

  bool operator==(const SurvivorEntry& o) const { return N == o.N && structure == o.structure; }
};

// A known extra survivor with the oracle fact that would remove it.
struct Residue {
  i64 N = 0;
  std::string structure;
  std::string missing_fact;
};
const std::vector<Residue>& documented_residues();

struct Table1Options {
  i64 lo = 33;
  i64 hi = 999;
  bool include_table2 = true;  // expect Table 2 INFO structures at semistable Table 2 conductors
  unsigned threads = 0;
};

struct Table1Report {
  std::vector<SurvivorEntry> match;
  std::vector<SurvivorEntry> extra;     // survivors neither table lists and no residue explains
  std::vector<SurvivorEntry> residues;  // documented extra survivors
  std::vector<SurvivorEntry> missing;   // expected survivors the sieve eliminated
  i64 swept = 0;

  bool hard_failure() const { return !missing.empty(); }
  bool complete() const { return extra.empty() && residues.size() <= 5; }
  std::string text() const;
  std::string json(int indent = 2) const;
};

Table1Report verify_table1(const Tables& tables, const FieldOracle& oracle, const Table1Options& opt = {});

}  // namespace paramod
