#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <regex>

#include "json.hpp"
#include "paramod/harness.hpp"
#include "paramod/hyper.hpp"

using namespace paramod;

namespace {

FieldOracle open_oracle(const std::string& path, bool none) {
  if (none) return FieldOracle{};
  std::string p = path.empty() ? default_oracle_path() : path;
  if (!std::filesystem::exists(p)) {
    if (path.empty()) return FieldOracle{};
    throw std::runtime_error(p + ": cannot open");
  }
  return FieldOracle::load(p);
}

std::pair<i64, i64> parse_range(const std::string& s) {
  static const std::regex re(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--range", "expected LO..HI");
  i64 lo = std::stoll(m[1]), hi = std::stoll(m[2]);
  if (lo > hi) throw CLI::ValidationError("--range", "LO must not exceed HI");
  return {lo, hi};
}

int run_sieve(i64 n, const std::string& range, const std::string& oracle_path, bool no_oracle, bool json, unsigned threads) {
  FieldOracle oracle = open_oracle(oracle_path, no_oracle);
  std::vector<SieveReport> reps;
  if (!range.empty()) {
    auto [lo, hi] = parse_range(range);
    reps = sweep(lo, hi, oracle, threads);
  } else {
    reps.push_back(evaluate(n, oracle));
  }
  if (json) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : reps) arr.push_back(nlohmann::ordered_json::parse(r.json(-1)));
    std::cout << (range.empty() ? arr[0].dump(2) : arr.dump(2)) << "\n";
  } else {
    for (auto& r : reps) std::cout << r.text();
  }
  return 0;
}

int run_curve(const std::string& poly_text, i64 primes, i64 euler_bound) {
  IntPoly f = IntPoly::parse(poly_text);
  CurveModel model = CurveModel::from_hyperelliptic(f);
  if (!genus_two(model)) {
    std::cerr << "not a genus-2 curve\n";
    return 1;
  }
  Classification c = classify_two_torsion(f, primes);
  std::cout << "polynomial: " << f.str() << "\n";
  std::cout << "model: y^2 + (" << model.G.str() << ") y = " << model.F.str() << "\n";
  std::cout << "info: " << c.code.str() << "\n";
  std::cout << "composition factors:";
  for (int d : c.module.composition_factor_dims) std::cout << " " << d;
  std::cout << "\nfactors:\n";
  for (auto& g : c.module.factors) {
    std::cout << "  degree " << g.degree << " " << (g.factor.is_zero() ? "(root at infinity)" : g.factor.str()) << "  group "
              << g.group;
    if (g.conductor != 1) std::cout << "  conductor " << g.conductor;
    std::cout << "\n";
  }
  CurveDisc d = model_discriminant(model);
  std::cout << "discriminant: " << d.delta << "\n  odd part:";
  for (auto& [p, e] : d.odd_factors) std::cout << " " << p << "^" << e;
  if (d.odd_cofactor != 1) std::cout << " * " << d.odd_cofactor;
  std::cout << "\neuler factors (good odd p < " << euler_bound << "):\n";
  for (i64 p = 3; p < euler_bound; p += 2) {
    if (!is_prime(p) || !is_good_prime(model, p)) continue;
    auto e = euler_factor(model, p);
    auto k = e.coeffs();
    std::printf("  p = %lld: 1 %+lldT %+lldT^2 %+lldT^3 %+lldT^4\n", (long long)p, (long long)k[1], (long long)k[2],
                (long long)k[3], (long long)k[4]);
  }
  return 0;
}

int run_tables(int which, const std::string& oracle_path, bool no_oracle, bool json, i64 primes, i64 euler_bound,
               unsigned threads) {
  Tables t = load_tables();
  if (which == 2) {
    auto rep = verify_table2(t.table2, primes, euler_bound, threads);
    std::cout << (json ? rep.json() + "\n" : rep.text());
    return rep.failures() == 0 ? 0 : 1;
  }
  FieldOracle oracle = open_oracle(oracle_path, no_oracle);
  Table1Options opt;
  opt.threads = threads;
  auto rep = verify_table1(t, oracle, opt);
  std::cout << (json ? rep.json() + "\n" : rep.text());
  return rep.hard_failure() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(true);
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  CLI::App app{"paramod: 2-torsion sieve for paramodular conductors"};
  app.require_subcommand(1);

  std::string oracle_path;
  bool no_oracle = false, json = false;
  unsigned threads = 0;

  auto* sieve = app.add_subcommand("sieve", "evaluate candidate structures at N or over a range");
  i64 n = 0;
  std::string range;
  auto* opt_n = sieve->add_option("--n", n, "odd non-square conductor");
  auto* opt_r = sieve->add_option("--range", range, "LO..HI");
  opt_n->excludes(opt_r);
  sieve->add_option("--oracle", oracle_path, "oracle TSV (default: $PARAMOD_ORACLE or bundled)");
  sieve->add_flag("--no-oracle", no_oracle, "use an empty oracle");
  sieve->add_flag("--json", json, "JSON output");
  sieve->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* curve = app.add_subcommand("curve", "genus-2 curve tools");
  curve->require_subcommand(1);
  auto* analyze = curve->add_subcommand("analyze", "classify the 2-torsion of y^2 = F(x)");
  std::string poly;
  i64 primes = 2000, euler_bound = 30;
  analyze->add_option("--poly", poly, "F(x), e.g. \"x^6 + 4x^5 + 4x^4 + 2x^3 + 1\"")->required();
  analyze->add_option("--primes", primes, "prime bound for Frobenius sampling");
  analyze->add_option("--euler", euler_bound, "print Euler factors below this bound");

  auto* tables = app.add_subcommand("tables", "golden table verification");
  tables->require_subcommand(1);
  auto* verify = tables->add_subcommand("verify", "verify table 1 (sieve) or table 2 (curves)");
  int which = 2;
  i64 tprimes = 2000, teuler = 200;
  verify->add_option("--which", which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  verify->add_option("--oracle", oracle_path, "oracle TSV for table 1");
  verify->add_flag("--no-oracle", no_oracle, "use an empty oracle");
  verify->add_flag("--json", json, "JSON output");
  verify->add_option("--primes", tprimes, "prime bound for Frobenius sampling");
  verify->add_option("--euler", teuler, "Euler cross-check bound");
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sieve) {
      if (!*opt_n && !*opt_r) throw CLI::RequiredError("--n or --range");
      return run_sieve(n, range, oracle_path, no_oracle, json, threads);
    }
    if (*analyze) return run_curve(poly, primes, euler_bound);
    if (*verify) return run_tables(which, oracle_path, no_oracle, json, tprimes, teuler, threads);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
