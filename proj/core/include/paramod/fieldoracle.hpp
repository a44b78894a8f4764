#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramod/arith.hpp"
#include "paramod/polyfield.hpp"

namespace paramod {

// True iff d1 x^2 + d2 y^2 = 1 has a rational solution.
bool d4r_exists(i64 d1, i64 d2);

enum class QueryKind {
  D4nr,
  D4sp,
  QuadExtOfCubic,
  RE,
  REcr,
  Split2InLambda,
  RamOf2InF,
  ResidueDeg2InF,
  MaxRealCr,
  RamInLambdaCr,
  SplitInLambdaCr,
  Fissile,
  Transparent,
  GenSplit,
  PairBase,
  InertInF,
  CatalogComplete,
};

std::string query_kind_name(QueryKind k);

// Conductor data of a quadratic extension L1/F1 of a cubic field.
struct ConductorSpec {
  std::vector<i64> odd_primes;  // S \ T, each with exponent <= 1
  bool infinite_allowed = false;
  int two_exponent = 0;         // c_2 divides 2^two_exponent
  bool lambda_square_refinement = false;
};

struct OracleQuery {
  QueryKind kind = QueryKind::D4nr;
  i64 d1 = 0, d2 = 0;          // D4nr, D4sp
  std::string field;           // cubic field label, e.g. "83.1"
  std::string field2;          // PairBase
  std::vector<i64> S;          // sorted primes, S contains T
  i64 p = 0;                   // SplitInLambdaCr, InertInF
  bool crystalline = false;    // QuadExtOfCubic
  ConductorSpec conductor;     // QuadExtOfCubic
  std::string catalog;         // CatalogComplete

  std::string key() const;     // canonical record key
  std::string str() const;
};

struct OracleAnswer {
  enum class Value { Yes, No, Count, Unknown };
  Value value = Value::Unknown;
  int count = 0;
  std::string provenance;

  bool yes() const { return value == Value::Yes; }
  bool no() const { return value == Value::No; }
  bool known() const { return value != Value::Unknown; }
  bool count_is(int n) const { return value == Value::Count && count == n; }
  std::string str() const;
};

enum class Split2 { E3, E2, F1, F2, F3 };
std::string split2_name(Split2 s);
Split2 parse_split2(const std::string& s);

struct CubicFieldRec {
  std::string label;  // "<conductor>.<k>"
  i64 conductor = 0;  // odd part of |d_K|
  i64 disc = 0;
  IntPoly poly;
  Split2 split2 = Split2::E3;
  std::string provenance;

  bool ramified_at_2() const { return split2 == Split2::E3 || split2 == Split2::E2; }
};

enum class IrrType { Q, Wr72, S6 };
std::string irr_type_name(IrrType t);

struct IrrFieldRec {
  std::string label;
  i64 conductor = 0;
  IrrType type = IrrType::Q;
  std::optional<IntPoly> poly;
  std::string provenance;
};

class OracleLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleRecord {
  std::string kind;
  std::string key;
  std::string value;
  std::string provenance;
  int line = 0;
};

class FieldOracle {
 public:
  FieldOracle() = default;
  static FieldOracle load(const std::string& path);  // missing file gives an empty oracle
  static FieldOracle parse(const std::string& text, const std::string& source = "<memory>");
  static FieldOracle from_records(const std::vector<OracleRecord>& records);

  OracleAnswer answer(const OracleQuery& q) const;

  const std::vector<CubicFieldRec>& cubic_fields() const { return cubic_; }
  const std::vector<IrrFieldRec>& irreducible_fields() const { return irr_; }
  std::vector<const CubicFieldRec*> cubic_fields_dividing(i64 n) const;
  std::vector<const IrrFieldRec*> irreducible_fields_dividing(i64 n) const;
  const CubicFieldRec* cubic_field(const std::string& label) const;
  bool catalog_complete(const std::string& name) const;

  const std::vector<OracleRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  void add(const OracleRecord& r);
  const OracleRecord* find(const std::string& kind, const std::string& key) const;
  OracleAnswer lookup(const std::string& kind, const std::string& key, bool counted) const;
  // A record of the given kind for the same field whose prime set contains S and whose value is `value`.
  const OracleRecord* superset(const std::string& kind, const std::string& field, const std::vector<i64>& S,
                               const std::string& value) const;
  OracleAnswer zero_multiplicity(const std::string& field, const std::vector<i64>& S, bool crystalline) const;

  std::vector<OracleRecord> records_;
  std::map<std::pair<std::string, std::string>, size_t> index_;
  std::map<std::string, std::vector<size_t>> by_field_;  // field-and-S records by field label
  std::vector<CubicFieldRec> cubic_;
  std::vector<IrrFieldRec> irr_;
};

OracleQuery build_query_L1(const CubicFieldRec& field, std::vector<i64> S, bool crystalline);
OracleQuery make_field_query(QueryKind kind, const std::string& field, std::vector<i64> S = {});

// Is D_lambda(L/F) of order 2, from the splitting of 2 in the sextic L1.
bool two_inert_predicate(const std::vector<std::pair<int, int>>& splitting_of_2_in_L1, std::pair<int, int> ef_of_F);

// Dimension over F_2 of H^1(S_3, E) with E the natural module F_2^2 of GL_2(F_2).
int h1_dimension_s3_natural();

}  // namespace paramod
