#include "doctest.h"
#include "paramod/harness.hpp"
#include "json.hpp"
#include "test_util.hpp"

#include <random>

using namespace paramod;
using Status = RuleResult::Status;
using Outcome = Verdict::Outcome;

namespace {

FieldOracle catalog_only() {
  std::vector<OracleRecord> recs;
  for (auto& r : testutil::bundled_oracle().records())
    if (r.kind == "CubicField" || r.kind == "IrrField" || r.kind == "CatalogComplete") recs.push_back(r);
  return FieldOracle::from_records(recs);
}

FieldOracle catalog_plus(const std::string& extra) {
  std::string text;
  for (auto& r : testutil::bundled_oracle().records())
    if (r.kind == "CubicField" || r.kind == "IrrField" || r.kind == "CatalogComplete")
      text += r.kind + "\t" + r.key + "\t" + r.value + "\t" + r.provenance + "\n";
  return FieldOracle::parse(text + extra);
}

const CandidateVerdict& candidate(const SieveReport& r, const std::string& structure, const std::string& field = "") {
  const StructureVerdict* s = r.find(InfoCode::parse(structure));
  REQUIRE(s);
  for (auto& c : s->candidates)
    if (field.empty() || c.candidate.field == field) return c;
  FAIL("no candidate " << structure << " " << field);
  throw 0;
}

Status trace_status(const Verdict& v, const std::string& rule) {
  for (auto& t : v.trace)
    if (t.rule == rule) return t.status;
  return Status::Inapplicable;
}

std::vector<std::string> survivors(const SieveReport& r) {
  std::vector<std::string> out;
  for (auto& s : r.survivors()) out.push_back(s.str());
  return out;
}

}  // namespace

TEST_SUITE("sieve") {
  TEST_CASE("candidate enumeration") {
    FieldOracle empty;
    auto c = enumerate_candidates(415, empty);
    std::set<std::string> tags;
    for (auto& x : c) tags.insert(x.structure.str());
    for (auto t : {"u", "5", "83", "415", "5x83", "q", "wr72", "S6"}) CHECK_MESSAGE(tags.count(t), t);
    for (auto& x : c) CHECK(x.tau == std::map<i64, int>{{5, 1}, {83, 1}});
    CHECK_THROWS(enumerate_candidates(9, empty));
    CHECK_THROWS(enumerate_candidates(10, empty));
    CHECK_THROWS(enumerate_candidates(1000000, empty));
    CHECK_FALSE(enumerate_candidates(13, empty).empty());
  }

  TEST_CASE("one candidate per catalog field") {
    auto c = enumerate_candidates(307 * 3, testutil::bundled_oracle());
    int n307 = 0;
    for (auto& x : c)
      if (x.structure.str() == "307") ++n307;
    CHECK(n307 == 4);
  }

  TEST_CASE("schoof31") {
    FieldOracle empty;
    for (i64 n : {13, 23}) {
      auto r = evaluate(n, empty);
      CHECK(r.flag == SieveReport::Flag::RuledOut);
      for (auto& s : r.structures)
        for (auto& c : s.candidates) CHECK(c.verdict.rule == "schoof31");
    }
    CHECK(trace_status(candidate(evaluate(33, empty), "u").verdict, "schoof31") == Status::Inapplicable);
  }

  TEST_CASE("nilpgenbd") {
    FieldOracle empty;
    CHECK(trace_status(candidate(evaluate(83 * 3, empty), "u").verdict, "nilpgenbd") == Status::Eliminates);
    CHECK(trace_status(candidate(evaluate(623, empty), "u").verdict, "nilpgenbd") != Status::Eliminates);
    Candidate sq{121, InfoCode::parse("u"), "", "", {{11, 2}}};
    CHECK(trace_status(evaluate_candidate(sq, empty), "nilpgenbd") == Status::Eliminates);
  }

  TEST_CASE("trivialplus") {
    FieldOracle empty;
    Candidate c{37 * 37, InfoCode::parse("u"), "", "", {{37, 2}}};
    CHECK(trace_status(evaluate_candidate(c, empty), "trivialplus.ic") == Status::Eliminates);
    auto v = candidate(evaluate(17 * 125, empty), "u").verdict;
    bool nontrivial = false;
    for (auto& p : hilbert_nontrivial_places(17, 5)) nontrivial = nontrivial || !p.is_infinite();
    REQUIRE(nontrivial);
    CHECK(trace_status(v, "trivialplus.iib") == Status::Eliminates);

    auto o = catalog_plus("rE\t83.1;83\t0\tt\nTransparent\t83.1;5,83\tYes\tt\n");
    auto n83 = candidate(evaluate(415, o), "83", "83.1").verdict;
    CHECK(n83.outcome == Outcome::Eliminated);
    CHECK(trace_status(n83, "trivialplus.ic") == Status::Eliminates);
  }

  TEST_CASE("pqr family") {
    FieldOracle empty;
    CHECK(trace_status(candidate(evaluate(415, empty), "u").verdict, "firstpqa") == Status::Eliminates);
    CHECK(chi(3, 5) == -1);
    CHECK(trace_status(candidate(evaluate(75, empty), "u").verdict, "secondpq") == Status::Eliminates);
    CHECK(chi(5, 7) == -1);
    CHECK(trace_status(candidate(evaluate(105, empty), "u").verdict, "morepqr") == Status::Eliminates);
  }

  TEST_CASE("grothendieck inertness") {
    const FieldOracle& o = testutil::bundled_oracle();
    auto q = candidate(evaluate(3 * 277, o), "q").verdict;
    CHECK(q.outcome == Outcome::Eliminated);
    CHECK(q.rule == "groth.inert");
    auto pr = candidate(evaluate(3 * 121, o), "11x11").verdict;
    CHECK(pr.outcome == Outcome::Eliminated);
    CHECK(pr.rule == "groth.inert");

    auto nopoly = catalog_plus("");
    std::vector<OracleRecord> recs;
    for (auto& r : nopoly.records())
      if (!(r.kind == "IrrField" && r.key == "277.1")) recs.push_back(r);
    recs.push_back({"IrrField", "277.1", "type=q", "test", 0});
    auto v = candidate(evaluate(3 * 277, FieldOracle::from_records(recs)), "q").verdict;
    CHECK(v.outcome == Outcome::NeedsOracle);
    CHECK_FALSE(v.queries.empty());
  }

  TEST_CASE("exceptional delta") {
    // 11.1 is ramified at 2.
    auto o = catalog_plus("rE\t11.1;11\t0\tt\n");
    CHECK(trace_status(candidate(evaluate(3 * 11 * 17 * 5, o), "11", "11.1").verdict, "trivial") != Status::Eliminates);
    CHECK(trace_status(candidate(evaluate(3 * 11, o), "11", "11.1").verdict, "trivial") == Status::Eliminates);
    CHECK(trace_status(candidate(evaluate(5 * 11 * 7, o), "11", "11.1").verdict, "trivial") == Status::Inapplicable);
    auto b = testutil::bundled_oracle();
    auto n83 = candidate(evaluate(415, b), "83", "83.1").verdict;
    // 83.1 has f = 2 at 2, so delta <= 1 and the bound 2 > 0 + 1 does not hold at 5 * 83 or 3 * 83.
    CHECK(n83.outcome != Outcome::Eliminated);
    CHECK(trace_status(n83, "trivial") == Status::Holds);
    auto n249 = candidate(evaluate(3 * 83, b), "83").verdict;
    CHECK(trace_status(n249, "trivial") == Status::Holds);
    CHECK(n249.outcome != Outcome::Eliminated);
  }

  TEST_CASE("mirage rules") {
    // 37.1 is ramified at 2.
    auto o = catalog_plus("rEcr\t37.1;37\t1\tt\nMaxRealCr\t37.1\tYes\tt\n");
    Candidate c{37, InfoCode::parse("37"), "37.1", "", {{37, 1}}};
    auto v = evaluate_candidate(c, o);
    CHECK(trace_status(v, "punchline.i") == Status::Eliminates);

    auto m = catalog_plus("rEcr\t37.1;3,37\t0\tt\nrE\t37.1;3,5,37\t0\tt\n");
    auto mv = candidate(evaluate(3 * 5 * 37, m), "37", "37.1").verdict;
    CHECK(trace_status(mv, "mirpar") == Status::Eliminates);
    CHECK(mv.outcome == Outcome::Eliminated);

    auto none = candidate(evaluate(3 * 5 * 37, catalog_only()), "37", "37.1").verdict;
    CHECK(none.outcome == Outcome::NeedsOracle);
    CHECK(trace_status(none, "mirpar") == Status::Blocked);
  }

  TEST_CASE("table survivors with the bundled oracle") {
    const FieldOracle& o = testutil::bundled_oracle();
    CHECK(survivors(evaluate(531, o)) == std::vector<std::string>{"59"});
    CHECK(survivors(evaluate(847, o)) == std::vector<std::string>{"11x11"});
    CHECK(survivors(evaluate(777, o)) == std::vector<std::string>{"u", "37"});
    CHECK(survivors(evaluate(415, o)) == std::vector<std::string>{"83"});
    CHECK(evaluate(847, o).flag == SieveReport::Flag::Open);
    CHECK(evaluate(3 * 277, o).flag == SieveReport::Flag::RuledOut);
  }

  TEST_CASE("table 2 structures are never eliminated") {
    FieldOracle empty;
    for (const FieldOracle* o : std::vector<const FieldOracle*>{&empty, &testutil::bundled_oracle()})
      for (auto& r : testutil::tables().table2) {
        if (r.not_semistable()) continue;
        auto rep = evaluate(r.N, *o);
        auto s = rep.survivors();
        CHECK_MESSAGE(std::find(s.begin(), s.end(), r.info) != s.end(), r.id);
      }
  }

  TEST_CASE("determinism") {
    const FieldOracle& o = testutil::bundled_oracle();
    for (i64 n : {415, 777, 847, 963}) CHECK(evaluate(n, o).json() == evaluate(n, o).json());
    auto a = sweep(33, 301, o, 1), b = sweep(33, 301, o, 8);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].json() == b[i].json());
  }

  TEST_CASE("witness replay") {
    for (auto& r : sweep(33, 999, testutil::bundled_oracle())) {
      for (auto& s : r.structures)
        for (auto& c : s.candidates)
          for (auto& w : c.verdict.witness) REQUIRE_MESSAGE(replay_matches(w), r.N << " " << w.str());
    }
    CHECK(replay_witness("big_omega", {40}) == 4);
    CHECK(replay_witness("p_star", {3}) == -3);
    CHECK(replay_witness("hilbert", {-1, -1, 0}) == -1);
    CHECK_THROWS(replay_witness("nope", {1}));
  }

  TEST_CASE("monotonicity in oracle data") {
    const FieldOracle& full = testutil::bundled_oracle();
    std::vector<OracleRecord> fixed, facts;
    for (auto& r : full.records())
      (r.kind == "CubicField" || r.kind == "IrrField" || r.kind == "CatalogComplete" ? fixed : facts).push_back(r);
    std::mt19937 rng(2024);
    for (int round = 0; round < 4; ++round) {
      std::shuffle(facts.begin(), facts.end(), rng);
      size_t k1 = rng() % facts.size(), k2 = k1 + rng() % (facts.size() - k1 + 1);
      auto small = fixed, large = fixed;
      small.insert(small.end(), facts.begin(), facts.begin() + k1);
      large.insert(large.end(), facts.begin(), facts.begin() + k2);
      auto a = sweep(33, 999, FieldOracle::from_records(small)), b = sweep(33, 999, FieldOracle::from_records(large));
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].structures.size(); ++j) {
          auto x = a[i].structures[j].outcome, y = b[i].structures[j].outcome;
          if (x != Outcome::NeedsOracle) REQUIRE_MESSAGE(x == y, a[i].N << " " << a[i].structures[j].structure.str());
        }
    }
  }

  TEST_CASE("report serialization") {
    auto r = evaluate(777, testutil::bundled_oracle());
    auto j = nlohmann::json::parse(r.json());
    CHECK(j["n"] == 777);
    CHECK(j["flag"] == r.flag_name());
    REQUIRE(j["candidates"].is_array());
    for (auto& c : j["candidates"])
      for (auto key : {"structure", "outcome", "rule", "witness", "trace"}) CHECK(c.contains(key));
    CHECK(r.text().find("777") != std::string::npos);
  }
}
