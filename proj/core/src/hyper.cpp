#include "paramod/hyper.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace paramod {

namespace {

constexpr i64 kTrialBound = 100000;

i64 mod(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::vector<int> square_table(i64 p) {
  std::vector<int> chi(static_cast<size_t>(p), -1);
  chi[0] = 0;
  for (i64 x = 1; x < p; ++x) chi[static_cast<size_t>(x * x % p)] = 1;
  return chi;
}

i64 eval_mod(const fp::Poly& h, i64 x, i64 p) {
  i64 r = 0;
  for (size_t i = h.size(); i-- > 0;) r = (r * x + h[i]) % p;
  return r;
}

// Elements a + b t of F_p[t]/(t^2 - n).
struct Fp2 {
  i64 a, b;
};

Fp2 mul2(Fp2 u, Fp2 v, i64 n, i64 p) {
  return {(u.a * v.a + u.b * v.b % p * n) % p, (u.a * v.b + u.b * v.a) % p};
}

i64 coeff_mod(const fp::Poly& h, size_t i) { return i < h.size() ? h[i] : 0; }

}  // namespace

IntPoly CurveModel::h() const { return G * G + F * BigInt(4); }

CurveModel CurveModel::from_hyperelliptic(const IntPoly& f, std::string label) {
  CurveModel c;
  c.label = std::move(label);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<BigInt> gc(4);
    for (int i = 0; i < 4; ++i) gc[static_cast<size_t>(i)] = (mask >> i) & 1;
    IntPoly g(gc);
    IntPoly rest = f - g * g;
    bool ok = true;
    for (auto& a : rest.coeffs())
      if (a % 4 != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<BigInt> fc;
    for (auto& a : rest.coeffs()) fc.push_back(a / 4);
    c.F = IntPoly(fc);
    c.G = g;
    return c;
  }
  c.F = f;
  return c;
}

std::array<i64, 5> EulerFactor::coeffs() const { return {1, -e1, e2, -p * e1, p * p}; }

i64 EulerFactor::value_at(i64 t) const {
  auto c = coeffs();
  i64 r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
  return r;
}

double EulerFactor::purity_defect() const {
  using cd = std::complex<double>;
  // alpha + p/alpha = s with s^2 - e1 s + (e2 - 2p) = 0.
  double sp = std::sqrt(static_cast<double>(p));
  cd disc_s = cd(static_cast<double>(e1 * e1 - 4 * (e2 - 2 * p)), 0.0);
  cd root_s = std::sqrt(disc_s);
  double worst = 0.0;
  for (cd s : {(cd(e1) + root_s) / 2.0, (cd(e1) - root_s) / 2.0}) {
    cd r = std::sqrt(s * s - 4.0 * static_cast<double>(p));
    for (cd a : {(s + r) / 2.0, (s - r) / 2.0}) worst = std::max(worst, std::abs(std::abs(a) / sp - 1.0));
  }
  return worst;
}

BigInt disc6(const IntPoly& h) {
  if (h.degree() == 6) return discriminant(h);
  if (h.degree() == 5) return h.lc() * h.lc() * discriminant(h);
  return 0;
}

bool genus_two(const CurveModel& c) {
  IntPoly h = c.h();
  return (h.degree() == 5 || h.degree() == 6) && disc6(h) != 0;
}

CurveDisc model_discriminant(const CurveModel& c) {
  if (!genus_two(c)) throw std::invalid_argument("model is not a smooth genus-2 curve");
  CurveDisc d;
  BigInt raw = disc6(c.h());
  BigInt scale = BigInt(1) << 12;
  if (raw % scale == 0) {
    d.delta = raw / scale;
    d.two_shift = -12;
  } else {
    d.delta = raw;
  }
  BigInt odd = d.delta < 0 ? BigInt(-d.delta) : d.delta;
  while (odd % 2 == 0) odd /= 2;
  auto [fs, rest] = trial_factor(odd, kTrialBound);
  d.odd_factors = std::move(fs);
  d.odd_cofactor = rest;
  return d;
}

bool is_good_prime(const CurveModel& c, i64 p) {
  if (p < 3 || !is_prime(static_cast<u64>(p))) return false;
  return disc6(c.h()) % p != 0;
}

i64 count_points(const CurveModel& c, i64 p, int r) {
  if (!is_good_prime(c, p)) throw std::invalid_argument("count_points needs a good odd prime");
  if (r != 1 && r != 2) throw std::invalid_argument("count_points supports F_p and F_p^2 only");
  fp::Poly h = fp::reduce(c.h(), p);
  auto chi = square_table(p);
  i64 lead = coeff_mod(h, 6);
  if (r == 1) {
    i64 n = 1 + chi[static_cast<size_t>(lead)];
    for (i64 x = 0; x < p; ++x) n += 1 + chi[static_cast<size_t>(eval_mod(h, x, p))];
    return n;
  }
  i64 nonsq = 2;
  while (chi[static_cast<size_t>(nonsq)] != -1) ++nonsq;
  // Every element of F_p is a square in F_{p^2}.
  i64 n = lead ? 2 : 1;
  for (i64 a = 0; a < p; ++a)
    for (i64 b = 0; b < p; ++b) {
      Fp2 x{a, b}, v{0, 0};
      for (size_t i = h.size(); i-- > 0;) {
        v = mul2(v, x, nonsq, p);
        v.a = (v.a + h[i]) % p;
      }
      i64 norm = mod(v.a * v.a - v.b * v.b % p * nonsq, p);
      if (v.a == 0 && v.b == 0)
        n += 1;
      else
        n += 1 + chi[static_cast<size_t>(norm)];
    }
  return n;
}

EulerFactor euler_factor(const CurveModel& c, i64 p) {
  i64 n1 = count_points(c, p, 1);
  i64 n2 = count_points(c, p, 2);
  EulerFactor ef;
  ef.p = p;
  ef.e1 = p + 1 - n1;
  i64 twice = ef.e1 * ef.e1 - (p * p + 1 - n2);
  if (twice % 2 != 0) throw std::logic_error("non-integral e2: point counts are inconsistent");
  ef.e2 = twice / 2;
  return ef;
}

bool mild_check(const CurveDisc& d, i64 m) {
  if (m < 2) throw std::invalid_argument("mild_check needs m >= 2");
  if (d.delta == 0) return false;
  for (auto& [q, e] : factorize(m).factors)
    if (big_valuation(d.delta, q) != 22 * e) return false;
  return true;
}

bool mild_check(const CurveModel& c, i64 m) { return mild_check(model_discriminant(c), m); }

}  // namespace paramod
