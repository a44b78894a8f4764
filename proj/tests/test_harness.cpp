#include "doctest.h"
#include "json.hpp"
#include "paramod/harness.hpp"
#include "test_util.hpp"

#include <fstream>
#include <sstream>

using namespace paramod;

namespace {

std::uint64_t fnv1a(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool has(const std::vector<SurvivorEntry>& v, i64 n, const std::string& s) {
  for (auto& e : v)
    if (e.N == n && e.structure.str() == s) return true;
  return false;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("bundled tables are unchanged") {
    CHECK(fnv1a(testutil::data("table1.tsv")) == 0xa3772fde1d72a6deULL);
    CHECK(fnv1a(testutil::data("table2.tsv")) == 0xbc086d66dd7ab707ULL);
  }

  TEST_CASE("table loading") {
    auto& t = testutil::tables();
    CHECK(t.table1.size() == 48);
    CHECK(t.table2.size() == 43);
    const Table1Row* r777 = nullptr;
    for (auto& r : t.table1)
      if (r.N == 777) r777 = &r;
    REQUIRE(r777);
    REQUIRE(r777->why.size() == 2);
    CHECK(r777->why[0].str() == "u");
    CHECK(r777->why[1].str() == "37");

    auto& r249 = testutil::row("249");
    CHECK(r249.N == 249);
    REQUIRE(r249.poly);
    CHECK(*r249.poly == IntPoly::parse("x^6 + 4x^5 + 4x^4 + 2x^3 + 1"));
    CHECK(r249.info.str() == "83");
    auto& r657 = testutil::row("657");
    CHECK(r657.kind == Table2Row::Kind::WeilRestriction);
    CHECK(r657.not_semistable());
    CHECK_FALSE(r657.poly);
    CHECK(testutil::row("561").kind == Table2Row::Kind::Prym);
    CHECK(testutil::row("587a").mild_modulus() == 3);
    CHECK(testutil::row("623").mild_modulus() == 8);
    CHECK_FALSE(testutil::row("277").mild_modulus());
  }

  TEST_CASE("round trip") {
    auto& t = testutil::tables();
    std::istringstream a(serialize_table1(t.table1)), b(serialize_table2(t.table2));
    CHECK(parse_table1(a) == t.table1);
    CHECK(parse_table2(b) == t.table2);
  }

  TEST_CASE("malformed rows") {
    auto msg = [](auto fn, const std::string& text) {
      std::istringstream in(text);
      try {
        fn(in);
      } catch (const TableLoadError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    auto t1 = [](std::istream& in) { parse_table1(in, "t1"); };
    auto t2 = [](std::istream& in) { parse_table2(in, "t2"); };
    CHECK(msg(t1, "# N\twhy\n33\tu\nabc\tu\n").rfind("t1:3:", 0) == 0);
    CHECK(msg(t1, "35\tzz\n").rfind("t1:1:", 0) == 0);
    CHECK(msg(t2, "249\tx^6 + 1\t83\t\n251\tx^^\t83\t\n").rfind("t2:2:", 0) == 0);
    CHECK(msg(t2, "249\tx^6 + 1\n").rfind("t2:1:", 0) == 0);
    CHECK(msg(t2, "249\tx^6 + 1\t83\tmild@x\n").rfind("t2:1:", 0) == 0);
    CHECK_THROWS_AS(load_table1("/nonexistent/table1.tsv"), TableLoadError);
  }

  TEST_CASE("table 2 rows") {
    auto r = verify_table2_row(testutil::row("277"), 2000, 200);
    CHECK(r.status == Table2Result::Status::Pass);
    CHECK(r.classified == "q");
    CHECK(r.disc_ok);
    CHECK(r.euler_checks > 0);
    CHECK(r.max_purity_defect < 1e-6);

    auto m = verify_table2_row(testutil::row("587a"), 2000, 50);
    CHECK(m.status == Table2Result::Status::Pass);
    REQUIRE(m.mild_ok);
    CHECK(*m.mild_ok);

    CHECK(verify_table2_row(testutil::row("561"), 2000, 50).status == Table2Result::Status::Skipped);
    CHECK(verify_table2_row(testutil::row("657"), 2000, 50).status == Table2Result::Status::Skipped);
  }

  TEST_CASE("table 1 with the bundled oracle") {
    auto rep = verify_table1(testutil::tables(), testutil::bundled_oracle());
    CHECK(rep.missing.empty());
    CHECK(rep.extra.empty());
    CHECK(rep.residues.size() <= 5);
    CHECK(rep.complete());
    CHECK(has(rep.match, 777, "u"));
    CHECK(has(rep.match, 777, "37"));
    CHECK(has(rep.match, 415, "83"));
    for (auto& r : rep.residues) {
      bool documented = false;
      for (auto& d : documented_residues()) documented = documented || (d.N == r.N && d.structure == r.structure.str());
      CHECK(documented);
    }
    auto j = nlohmann::json::parse(rep.json());
    for (auto key : {"match", "extra_survivor", "documented_residue", "missing_survivor"}) CHECK(j.contains(key));
  }

  TEST_CASE("table 1 with no oracle") {
    auto rep = verify_table1(testutil::tables(), FieldOracle{});
    CHECK(rep.missing.empty());
    CHECK_FALSE(rep.extra.empty());
    CHECK_FALSE(rep.hard_failure());
  }

  TEST_CASE("sweep range") {
    auto s = sweep(33, 99, FieldOracle{});
    REQUIRE_FALSE(s.empty());
    CHECK(s.front().N == 33);
    for (auto& r : s) {
      CHECK(r.N % 2 == 1);
      CHECK_FALSE(is_square_int(BigInt(r.N)).is_square);
    }
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].N < s[i].N);
  }
}
