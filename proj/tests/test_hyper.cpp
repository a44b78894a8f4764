#include "doctest.h"
#include "paramod/hyper.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace paramod;

namespace {

i64 md(const BigInt& v, i64 p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return static_cast<i64>(r);
}

i64 eval_mod(const IntPoly& f, i64 x, i64 p) {
  i64 acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = (acc * x + md(f.coeff(i), p)) % p;
  return acc;
}

int reduced_degree(const IntPoly& f, i64 p) {
  for (int i = f.degree(); i >= 0; --i)
    if (md(f.coeff(i), p) != 0) return i;
  return -1;
}

// Projective points on y^2 + G y = F over F_p by enumerating all (x, y).
i64 brute_count(const CurveModel& c, i64 p) {
  i64 n = 0;
  for (i64 x = 0; x < p; ++x) {
    i64 g = eval_mod(c.G, x, p), f = eval_mod(c.F, x, p);
    for (i64 y = 0; y < p; ++y)
      if (((y * y + g * y - f) % p + p) % p == 0) ++n;
  }
  IntPoly h = c.h();
  int d = reduced_degree(h, p);
  if (d == 5) n += 1;
  if (d == 6) n += 1 + testutil::legendre_brute(md(h.coeff(6), p), p);
  return n;
}

// Same over F_{p^2} = F_p[t]/(t^2 - r), r a nonsquare; only for y^2 = h.
i64 brute_count2(const IntPoly& h, i64 p) {
  i64 r = 2;
  while (testutil::legendre_brute(r, p) != -1) ++r;
  using E = std::pair<i64, i64>;
  auto mul = [&](E a, E b) { return E{(a.first * b.first + r * a.second % p * b.second) % p, (a.first * b.second + a.second * b.first) % p}; };
  auto add = [&](E a, E b) { return E{(a.first + b.first) % p, (a.second + b.second) % p}; };
  std::map<E, int> sq;
  for (i64 a = 0; a < p; ++a)
    for (i64 b = 0; b < p; ++b) sq[mul({a, b}, {a, b})]++;
  i64 n = 0;
  for (i64 a = 0; a < p; ++a)
    for (i64 b = 0; b < p; ++b) {
      E x{a, b}, v{0, 0};
      for (int i = h.degree(); i >= 0; --i) v = add(mul(v, x), E{md(h.coeff(i), p), 0});
      n += sq.count(v) ? sq[v] : 0;
    }
  int d = reduced_degree(h, p);
  if (d == 5) n += 1;
  if (d == 6) n += 2;  // every element of F_p is a square in F_{p^2}
  return n;
}

CurveModel curve(const std::string& s) { return CurveModel::from_hyperelliptic(IntPoly::parse(s)); }

}  // namespace

TEST_SUITE("hyper") {
  TEST_CASE("point counts match enumeration") {
    auto c = curve("x^6 - 1");
    REQUIRE(is_good_prime(c, 7));
    i64 n = count_points(c, 7, 1);
    CHECK(n == brute_count(c, 7));
    CHECK(std::abs(n - 8) <= 4 * std::sqrt(7.0));

    auto c5 = curve("x^5 + 1");
    CHECK(count_points(c5, 3, 1) == brute_count(c5, 3));
  }

  TEST_CASE("counts over F_p and F_{p^2} agree with enumeration on table curves") {
    for (auto& r : testutil::tables().table2) {
      if (!r.poly) continue;
      CurveModel c = CurveModel::from_hyperelliptic(*r.poly, r.id);
      for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        if (!is_good_prime(c, p)) continue;
        CHECK_MESSAGE(count_points(c, p, 1) == brute_count(c, p), r.id << " p=" << p);
        if (p <= 13) CHECK_MESSAGE(count_points(c, p, 2) == brute_count2(c.h(), p), r.id << " p=" << p);
        CHECK(count_points(c, p, 2) >= count_points(c, p, 1));
      }
    }
  }

  TEST_CASE("euler factors: integrality, reconstruction, structure") {
    for (auto& r : testutil::tables().table2) {
      if (!r.poly) continue;
      CurveModel c = CurveModel::from_hyperelliptic(*r.poly, r.id);
      for (i64 p = 3; p < 200; p += 2) {
        if (!is_prime(static_cast<u64>(p)) || !is_good_prime(c, p)) continue;
        EulerFactor e = euler_factor(c, p);
        i64 n1 = count_points(c, p, 1), n2 = count_points(c, p, 2);
        REQUIRE(n1 == p + 1 - e.e1);
        REQUIRE(n2 == p * p + 1 - (e.e1 * e.e1 - 2 * e.e2));
        auto k = e.coeffs();
        REQUIRE(k[0] == 1);
        REQUIRE(k[3] == -p * e.e1);
        REQUIRE(k[4] == p * p);
        REQUIRE(std::abs(static_cast<double>(e.e1)) <= 4 * std::sqrt(static_cast<double>(p)));
        if (p == 3) REQUIRE(std::abs(e.e1) <= 6);
      }
    }
  }

  TEST_CASE("Weil purity below 100") {
    for (auto& r : testutil::tables().table2) {
      if (!r.poly) continue;
      CurveModel c = CurveModel::from_hyperelliptic(*r.poly, r.id);
      for (i64 p = 3; p < 100; p += 2) {
        if (!is_prime(static_cast<u64>(p)) || !is_good_prime(c, p)) continue;
        EulerFactor e = euler_factor(c, p);
        CHECK(e.purity_defect() < 1e-6);
        CHECK(e.value_at(1) > 0);
        CHECK(e.value_at(-1) > 0);
      }
    }
  }

  TEST_CASE("bad primes are rejected") {
    auto c = curve("x^6 - 1");
    CHECK_FALSE(is_good_prime(c, 3));
    CHECK_THROWS(count_points(c, 3, 1));
    CHECK_THROWS(euler_factor(c, 3));
  }

  TEST_CASE("genus two models") {
    CHECK(genus_two(curve("x^5 + 1")));
    CHECK(genus_two(curve("x^6 - 1")));
    CHECK_FALSE(genus_two(CurveModel{IntPoly::parse("x^4 + 1"), IntPoly{}, ""}));
  }

  TEST_CASE("every odd prime of the conductor divides the model discriminant") {
    for (auto& r : testutil::tables().table2) {
      if (!r.poly) continue;
      CurveDisc d = model_discriminant(CurveModel::from_hyperelliptic(*r.poly, r.id));
      CHECK(d.delta != 0);
      for (i64 p : factorize(r.N).primes())
        if (p != 2) CHECK_MESSAGE(big_valuation(d.delta, p) > 0, r.id << " p=" << p);
    }
  }

  TEST_CASE("mild reduction labels") {
    auto check = [](const std::string& id, i64 m) {
      return mild_check(CurveModel::from_hyperelliptic(*testutil::row(id).poly, id), m);
    };
    CHECK(check("587a", 3));
    CHECK(check("893a", 5));
    CHECK(check("901", 7));
    CHECK(check("623", 8));
    CHECK(check("633", 2));
    CHECK_FALSE(check("587b", 3));
    CHECK_FALSE(check("249", 3));
    for (auto [id, m] : std::vector<std::pair<std::string, i64>>{{"587a", 3}, {"893a", 5}, {"901", 7}}) {
      CurveDisc d = model_discriminant(CurveModel::from_hyperelliptic(*testutil::row(id).poly, id));
      CHECK(big_valuation(d.delta, m) == 22);
    }
  }

  TEST_CASE("model discriminant records the 2-power normalization") {
    CurveModel c = CurveModel::from_hyperelliptic(*testutil::row("249").poly, "249");
    CurveDisc d = model_discriminant(c);
    BigInt full = disc6(c.h());
    if (d.two_shift >= 0)
      CHECK(d.delta == full * (BigInt(1) << d.two_shift));
    else
      CHECK(d.delta * (BigInt(1) << -d.two_shift) == full);
  }
}
