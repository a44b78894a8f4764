#include "paramod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "paramod/hyper.hpp"

#ifndef PARAMOD_DEFAULT_DATA_DIR
#define PARAMOD_DEFAULT_DATA_DIR "data"
#endif

namespace paramod {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

i64 parse_n(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw std::invalid_argument("bad conductor '" + s + "'");
  return std::stoll(s);
}

// Calls fn(fields) for every data line; errors become "source:line: msg".
void for_each_row(std::istream& in, const std::string& source, size_t columns,
                  const std::function<void(const std::vector<std::string>&)>& fn) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    try {
      auto f = split(line, '\t');
      if (f.size() != columns)
        throw std::invalid_argument("expected " + std::to_string(columns) + " tab-separated columns, got " +
                                    std::to_string(f.size()));
      fn(f);
    } catch (const std::exception& e) {
      throw TableLoadError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableLoadError(path + ": cannot open");
  return in;
}

unsigned worker_count(unsigned threads, size_t jobs) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<size_t>(1, std::min<size_t>(threads, jobs)));
}

// Runs fn(i) for i in [0, n) on a small pool; results are written by index.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
  unsigned w = worker_count(threads, n);
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      try {
        for (size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool odd_nonsquare(i64 n) {
  if (n % 2 == 0) return false;
  i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r != n;
}

std::string join_codes(const std::vector<InfoCode>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

const char* status_str(Table2Result::Status s) {
  switch (s) {
    case Table2Result::Status::Pass: return "PASS";
    case Table2Result::Status::Fail: return "FAIL";
    case Table2Result::Status::Skipped: return "SKIPPED";
  }
  return "?";
}

}  // namespace

bool Table2Row::not_semistable() const { return std::find(flags.begin(), flags.end(), "notSS") != flags.end(); }

std::optional<i64> Table2Row::mild_modulus() const {
  for (auto& f : flags)
    if (f.rfind("mild@", 0) == 0) return parse_n(f.substr(5));
  return std::nullopt;
}

std::vector<Table1Row> parse_table1(std::istream& in, const std::string& source) {
  std::vector<Table1Row> rows;
  for_each_row(in, source, 2, [&](const std::vector<std::string>& f) {
    Table1Row r;
    r.N = parse_n(trim(f[0]));
    if (!odd_nonsquare(r.N)) throw std::invalid_argument("conductor must be odd and not a square");
    for (auto& w : split(f[1], ',')) r.why.push_back(InfoCode::parse(trim(w)));
    if (r.why.empty()) throw std::invalid_argument("empty why column");
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<Table2Row> parse_table2(std::istream& in, const std::string& source) {
  std::vector<Table2Row> rows;
  for_each_row(in, source, 4, [&](const std::vector<std::string>& f) {
    Table2Row r;
    r.id = trim(f[0]);
    std::string digits = r.id;
    if (!digits.empty() && (digits.back() == 'a' || digits.back() == 'b')) digits.pop_back();
    r.N = parse_n(digits);
    std::string eq = trim(f[1]);
    if (eq == "PRYM") {
      r.kind = Table2Row::Kind::Prym;
    } else if (eq == "WEIL RESTRICTION") {
      r.kind = Table2Row::Kind::WeilRestriction;
    } else {
      r.poly = IntPoly::parse(eq);
      if (r.poly->degree() < 5 || r.poly->degree() > 6) throw std::invalid_argument("equation must have degree 5 or 6");
    }
    r.info = InfoCode::parse(trim(f[2]));
    for (auto& fl : split(f[3], ',')) {
      fl = trim(fl);
      if (fl.empty()) continue;
      if (fl != "notSS" && fl.rfind("mild@", 0) != 0) throw std::invalid_argument("unknown flag '" + fl + "'");
      r.flags.push_back(fl);
    }
    if (auto m = r.mild_modulus(); m && *m < 2) throw std::invalid_argument("mild modulus must be at least 2");
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<Table1Row> load_table1(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_table1(in, path);
}

std::vector<Table2Row> load_table2(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_table2(in, path);
}

std::string serialize_table1(const std::vector<Table1Row>& rows) {
  std::string s = "# N\twhy\n";
  for (auto& r : rows) s += std::to_string(r.N) + "\t" + join_codes(r.why) + "\n";
  return s;
}

std::string serialize_table2(const std::vector<Table2Row>& rows) {
  std::string s = "# N\tequation\tinfo\tflags\n";
  for (auto& r : rows) {
    std::string eq = r.kind == Table2Row::Kind::Prym              ? "PRYM"
                     : r.kind == Table2Row::Kind::WeilRestriction ? "WEIL RESTRICTION"
                                                                  : r.poly->str();
    std::string fl;
    for (size_t i = 0; i < r.flags.size(); ++i) fl += (i ? "," : "") + r.flags[i];
    s += r.id + "\t" + eq + "\t" + r.info.str() + "\t" + fl + "\n";
  }
  return s;
}

std::string data_dir() {
  if (const char* e = std::getenv("PARAMOD_DATA"); e && *e) return e;
  return PARAMOD_DEFAULT_DATA_DIR;
}

std::string default_oracle_path() {
  if (const char* e = std::getenv("PARAMOD_ORACLE"); e && *e) return e;
  return data_dir() + "/oracle.tsv";
}

Tables load_tables(const std::string& dir) { return {load_table1(dir + "/table1.tsv"), load_table2(dir + "/table2.tsv")}; }

std::vector<SieveReport> sweep(i64 lo, i64 hi, const FieldOracle& oracle, unsigned threads) {
  std::vector<i64> ns;
  for (i64 n = std::max<i64>(lo, 3); n <= hi; ++n)
    if (odd_nonsquare(n)) ns.push_back(n);
  std::vector<SieveReport> out(ns.size());
  parallel_for(ns.size(), threads, [&](size_t i) { out[i] = evaluate(ns[i], oracle); });
  return out;
}

Table2Result verify_table2_row(const Table2Row& row, i64 prime_bound, i64 euler_prime_bound) {
  Table2Result r;
  r.id = row.id;
  r.expected = row.info.str();
  if (!row.poly) {
    r.status = Table2Result::Status::Skipped;
    r.classified = row.kind == Table2Row::Kind::Prym ? "PRYM" : "WEIL RESTRICTION";
    return r;
  }
  const IntPoly& f = *row.poly;
  auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };

  try {
    Classification c = classify_two_torsion(f, prime_bound);
    r.classified = c.code.str();
    r.classification_ok = c.code == row.info;
    if (!r.classification_ok) {
      std::string dims;
      for (int d : c.module.composition_factor_dims) dims += std::to_string(d);
      std::string groups;
      for (auto& g : c.module.factors) groups += (groups.empty() ? "" : ",") + g.group;
      fail("classification " + r.classified + " != " + r.expected + " (composition dims " + dims + ", factor groups " +
           groups + ")");
    }
  } catch (const std::exception& e) {
    r.classified = "error";
    fail(std::string("classification error: ") + e.what());
  }

  CurveModel model = CurveModel::from_hyperelliptic(f, row.id);
  CurveDisc disc = model_discriminant(model);
  r.disc_ok = true;
  for (i64 p : factorize(row.N).primes()) {
    if (p == 2) continue;
    if (big_valuation(disc.delta, p) == 0) {
      r.disc_ok = false;
      fail("model discriminant prime to " + std::to_string(p));
    }
  }

  if (auto m = row.mild_modulus()) {
    r.mild_ok = mild_check(disc, *m);
    if (!*r.mild_ok) {
      std::ostringstream os;
      os << "mild@" << *m << " fails:";
      for (i64 q : factorize(*m).primes()) os << " ord_" << q << "(delta) = " << big_valuation(disc.delta, q);
      fail(os.str());
    }
  }

  IntPoly h = model.h();
  for (i64 p = 3; p < euler_prime_bound; p += 2) {
    if (!is_prime(p) || !is_good_prime(model, p)) continue;
    ModPFactorPattern pat = factor_mod_p(h, p);
    if (!pat.squarefree) continue;
    CycleType t = pat.degrees;
    int deg = 0;
    for (int d : t) deg += d;
    if (deg < 5) continue;
    while (deg < 6) t.push_back(1), ++deg;
    std::sort(t.begin(), t.end());
    EulerFactor e = euler_factor(model, p);
    auto lp = e.coeffs();
    F2Poly actual = 0;
    for (int i = 0; i <= 4; ++i)
      if (((lp[4 - i] % 2) + 2) % 2) actual |= F2Poly(1) << i;
    F2Poly expected = charpoly_on_V(t);
    ++r.euler_checks;
    if (actual != expected)
      fail("p = " + std::to_string(p) + ": cycle type " + cycle_type_str(t) + " gives " + f2_str(expected) +
           " but L_p mod 2 reversed is " + f2_str(actual));
    double defect = e.purity_defect();
    ++r.purity_checks;
    r.max_purity_defect = std::max(r.max_purity_defect, defect);
    if (defect > 1e-6) fail("p = " + std::to_string(p) + ": Weil purity defect " + std::to_string(defect));
    if (e.value_at(1) <= 0 || e.value_at(-1) <= 0) fail("p = " + std::to_string(p) + ": L_p(1) or L_p(-1) not positive");
  }
  r.status = r.failures.empty() ? Table2Result::Status::Pass : Table2Result::Status::Fail;
  return r;
}

Table2Report verify_table2(const std::vector<Table2Row>& rows, i64 prime_bound, i64 euler_prime_bound, unsigned threads) {
  Table2Report rep;
  rep.prime_bound = prime_bound;
  rep.euler_prime_bound = euler_prime_bound;
  rep.rows.resize(rows.size());
  parallel_for(rows.size(), threads,
               [&](size_t i) { rep.rows[i] = verify_table2_row(rows[i], prime_bound, euler_prime_bound); });
  return rep;
}

int Table2Report::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](auto& r) { return r.status == Table2Result::Status::Fail; }));
}

int Table2Report::euler_checks() const {
  int n = 0;
  for (auto& r : rows) n += r.euler_checks;
  return n;
}

std::string Table2Report::text() const {
  std::ostringstream os;
  for (auto& r : rows) {
    os << std::left << std::setw(6) << r.id << " " << std::setw(8) << status_str(r.status) << " expected "
       << std::setw(6) << r.expected << " classified " << r.classified;
    if (r.status != Table2Result::Status::Skipped) {
      os << " disc " << (r.disc_ok ? "ok" : "FAIL");
      if (r.mild_ok) os << " mild " << (*r.mild_ok ? "ok" : "FAIL");
      os << " euler " << r.euler_checks;
    }
    os << "\n";
    for (auto& f : r.failures) os << "    " << f << "\n";
  }
  os << "rows " << rows.size() << ", failures " << failures() << ", euler checks " << euler_checks() << "\n";
  return os.str();
}

std::string Table2Report::json(int indent) const {
  ojson j;
  j["prime_bound"] = prime_bound;
  j["euler_prime_bound"] = euler_prime_bound;
  j["failures"] = failures();
  j["euler_checks"] = euler_checks();
  j["rows"] = ojson::array();
  for (auto& r : rows) {
    ojson x;
    x["id"] = r.id;
    x["status"] = status_str(r.status);
    x["expected"] = r.expected;
    x["classified"] = r.classified;
    if (r.status != Table2Result::Status::Skipped) {
      x["disc_ok"] = r.disc_ok;
      x["mild_ok"] = r.mild_ok ? ojson(*r.mild_ok) : ojson(nullptr);
      x["euler_checks"] = r.euler_checks;
      x["max_purity_defect"] = r.max_purity_defect;
    }
    x["failures"] = r.failures;
    j["rows"].push_back(std::move(x));
  }
  return j.dump(indent);
}

const std::vector<Residue>& documented_residues() {
  static const std::vector<Residue> r{
      {627, "11x19",
       "groth.inert needs InertInF(19.1, 3) = Yes, but x^3 - 2x - 2 factors as (x - 1)(x^2 + x + 2) mod 3, "
       "so no valid record removes it"},
      {349, "q",
       "an oracle fact denying the quintic field 349.1; the row-349 sextic itself classifies as q, so no consistent "
       "record removes it"},
  };
  return r;
}

Table1Report verify_table1(const Tables& tables, const FieldOracle& oracle, const Table1Options& opt) {
  std::map<i64, std::vector<InfoCode>> expected;
  auto add = [&](i64 n, const InfoCode& c) {
    auto& v = expected[n];
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
  };
  for (auto& r : tables.table1)
    for (auto& c : r.why) add(r.N, c);
  if (opt.include_table2)
    for (auto& r : tables.table2)
      if (!r.not_semistable()) add(r.N, r.info);

  Table1Report rep;
  auto reports = sweep(opt.lo, opt.hi, oracle, opt.threads);
  rep.swept = static_cast<i64>(reports.size());
  for (auto& sr : reports) {
    auto surv = sr.survivors();
    auto it = expected.find(sr.N);
    std::vector<InfoCode> exp = it == expected.end() ? std::vector<InfoCode>{} : it->second;
    std::sort(exp.begin(), exp.end(), structure_less);
    for (auto& s : surv) {
      const StructureVerdict* v = sr.find(s);
      std::string note = v ? outcome_name(v->outcome) : "";
      if (std::find(exp.begin(), exp.end(), s) != exp.end()) {
        rep.match.push_back({sr.N, s, note});
        continue;
      }
      auto res = std::find_if(documented_residues().begin(), documented_residues().end(),
                              [&](const Residue& r) { return r.N == sr.N && r.structure == s.str(); });
      if (res != documented_residues().end())
        rep.residues.push_back({sr.N, s, res->missing_fact});
      else
        rep.extra.push_back({sr.N, s, note});
    }
    for (auto& e : exp) {
      if (std::find(surv.begin(), surv.end(), e) != surv.end()) continue;
      std::string note;
      if (const StructureVerdict* v = sr.find(e))
        for (auto& cv : v->candidates)
          if (cv.verdict.outcome == Verdict::Outcome::Eliminated) {
            note = cv.candidate.str() + " by " + cv.verdict.rule;
            break;
          }
      rep.missing.push_back({sr.N, e, note.empty() ? "not enumerated" : note});
    }
  }
  return rep;
}

std::string Table1Report::text() const {
  std::ostringstream os;
  auto section = [&](const char* name, const std::vector<SurvivorEntry>& v, bool notes) {
    os << name << " (" << v.size() << ")\n";
    for (auto& e : v) {
      os << "  " << e.N << " " << e.structure.str();
      if (notes && !e.note.empty()) os << ": " << e.note;
      os << "\n";
    }
  };
  os << "swept " << swept << " conductors\n";
  section("MATCH", match, false);
  section("EXTRA_SURVIVOR", extra, true);
  section("DOCUMENTED_RESIDUE", residues, true);
  section("MISSING_SURVIVOR", missing, true);
  return os.str();
}

std::string Table1Report::json(int indent) const {
  auto arr = [](const std::vector<SurvivorEntry>& v) {
    ojson a = ojson::array();
    for (auto& e : v) a.push_back(ojson{{"n", e.N}, {"structure", e.structure.str()}, {"note", e.note}});
    return a;
  };
  ojson j;
  j["swept"] = swept;
  j["match"] = arr(match);
  j["extra_survivor"] = arr(extra);
  j["documented_residue"] = arr(residues);
  j["missing_survivor"] = arr(missing);
  return j.dump(indent);
}

}  // namespace paramod
