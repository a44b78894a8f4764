#pragma once

#include <map>
#include <string>
#include <vector>

#include "paramod/arith.hpp"
#include "paramod/fieldoracle.hpp"
#include "paramod/galois2.hpp"

namespace paramod {

// A recomputable arithmetic fact: fn(args) == value.
// fn is one of big_omega, omega2, mod, p_star, chi, hilbert (place 0 = infinity), d4r_exists, exponent.
struct WitnessTerm {
  std::string fn;
  std::vector<i64> args;
  i64 value = 0;

  std::string str() const;
};

i64 replay_witness(const std::string& fn, const std::vector<i64>& args);
inline bool replay_matches(const WitnessTerm& t) { return replay_witness(t.fn, t.args) == t.value; }

struct OracleUse {
  OracleQuery query;
  OracleAnswer answer;
};

struct RuleResult {
  enum class Status { Eliminates, Holds, Inapplicable, Blocked };
  std::string rule;
  Status status = Status::Inapplicable;
  std::string note;
  std::vector<WitnessTerm> witness;
  std::vector<OracleUse> oracle;
  std::vector<OracleQuery> missing;
};

std::string status_name(RuleResult::Status s);

struct Candidate {
  i64 N = 0;
  InfoCode structure;
  std::string field;   // defining field label; empty for a generic candidate
  std::string field2;  // second field of a pair
  std::map<i64, int> tau;

  std::string str() const;
};

struct Verdict {
  enum class Outcome { Eliminated, Survives, NeedsOracle };
  Outcome outcome = Outcome::Survives;
  std::string rule;                  // eliminating rule
  std::vector<WitnessTerm> witness;  // of the eliminating rule
  std::vector<OracleUse> oracle;     // of the eliminating rule
  std::vector<OracleQuery> queries;  // unresolved demands when NeedsOracle
  std::vector<RuleResult> trace;
};

std::string outcome_name(Verdict::Outcome o);

struct CandidateVerdict {
  Candidate candidate;
  Verdict verdict;
};

struct StructureVerdict {
  InfoCode structure;
  Verdict::Outcome outcome = Verdict::Outcome::Survives;
  std::vector<CandidateVerdict> candidates;
};

struct SieveReport {
  enum class Flag { RuledOut, Open, Partial };
  i64 N = 0;
  std::vector<StructureVerdict> structures;
  Flag flag = Flag::RuledOut;

  std::vector<InfoCode> survivors() const;  // structures not eliminated
  const StructureVerdict* find(const InfoCode& s) const;
  std::string flag_name() const;
  std::string text() const;
  std::string json(int indent = 2) const;
};

bool structure_less(const InfoCode& a, const InfoCode& b);

// Throws std::invalid_argument for even, square or out-of-range N.
std::vector<Candidate> enumerate_candidates(i64 N, const FieldOracle& oracle);
Verdict evaluate_candidate(const Candidate& c, const FieldOracle& oracle);
SieveReport evaluate(i64 N, const FieldOracle& oracle);

}  // namespace paramod
