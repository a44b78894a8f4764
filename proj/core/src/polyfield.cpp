#include "paramod/polyfield.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace paramod {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_ints(const std::vector<i64>& coeffs) {
  std::vector<BigInt> c(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(c));
}

IntPoly IntPoly::monomial(const BigInt& c, int deg) {
  std::vector<BigInt> v(deg + 1);
  v[deg] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& IntPoly::lc() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<BigInt> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<int>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (auto& c : c_) g = mp::gcd(g, c);
  return g < 0 ? BigInt(-g) : g;
}

IntPoly IntPoly::primitive() const {
  if (c_.empty()) return *this;
  BigInt g = content();
  std::vector<BigInt> v = c_;
  if (lc() < 0) g = -g;
  for (auto& c : v) c /= g;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v = c_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (c_.empty() || o.c_.empty()) return IntPoly();
  std::vector<BigInt> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const BigInt& k) const {
  std::vector<BigInt> v = c_;
  for (auto& c : v) c *= k;
  return IntPoly(std::move(v));
}

std::optional<IntPoly> IntPoly::exact_div(const IntPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return IntPoly();
  if (degree() < d.degree()) return std::nullopt;
  std::vector<BigInt> r = c_;
  std::vector<BigInt> q(degree() - d.degree() + 1);
  const BigInt& l = d.lc();
  for (int i = degree() - d.degree(); i >= 0; --i) {
    BigInt top = r[i + d.degree()];
    if (top % l != 0) return std::nullopt;
    BigInt k = top / l;
    q[i] = k;
    for (int j = 0; j <= d.degree(); ++j) r[i + j] -= k * d.c_[j];
  }
  for (auto& x : r)
    if (x != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

std::string IntPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

IntPoly IntPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::vector<BigInt> coeffs;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected sign");
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail("dangling '*'");
      ++i;
    }
    int deg = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) fail("missing exponent");
        deg = std::stoi(e);
      }
    } else if (digits.empty()) {
      fail("empty term");
    }
    if (deg > 64) fail("degree too large");
    BigInt c = digits.empty() ? BigInt(1) : BigInt(digits);
    if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1);
    coeffs[deg] += sign * c;
  }
  return IntPoly(std::move(coeffs));
}

// ---------------------------------------------------------------- resultants

BigInt sylvester_determinant(const IntPoly& f, const IntPoly& g) {
  int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) throw std::domain_error("resultant of zero polynomial");
  int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) a[r][r + j] = f.coeff(m - j);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) a[n + r][r + j] = g.coeff(n - j);
  // Bareiss fraction-free elimination.
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < size; ++r)
        if (a[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

BigInt resultant(const IntPoly& f, const IntPoly& g) { return sylvester_determinant(f, g); }

BigInt discriminant(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("discriminant of zero polynomial");
  int n = f.degree();
  if (n == 0) return 1;
  BigInt r = resultant(f, f.derivative());
  BigInt d = r / f.lc();
  if (((n * (n - 1) / 2) & 1) != 0) d = -d;
  return d;
}

SquareTest is_square_int(const BigInt& n) {
  SquareTest t;
  if (n < 0) return t;
  BigInt r = mp::sqrt(n);
  if (r * r == n) {
    t.is_square = true;
    t.root = r;
  }
  return t;
}

int big_valuation(BigInt n, i64 p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::pair<std::vector<std::pair<i64, int>>, BigInt> trial_factor(BigInt n, i64 bound) {
  if (n < 0) n = -n;
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p <= bound && n > 1; ++p) {
    if (!is_prime(static_cast<u64>(p))) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  return {out, n};
}

// ---------------------------------------------------------------- F_p

namespace fp {

i64 inv(i64 a, i64 p) {
  i64 t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr) {
    i64 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return ((t % p) + p) % p;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce(const IntPoly& f, i64 p) {
  Poly out(f.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) {
    BigInt r = f.coeffs()[i] % p;
    if (r < 0) r += p;
    out[i] = static_cast<i64>(r);
  }
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, i64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    i64 x = i < a.size() ? a[i] : 0;
    i64 y = i < b.size() ? b[i] : 0;
    r[i] = ((x - y) % p + p) % p;
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, i64 p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  i64 li = inv(b.back(), p);
  for (int i = static_cast<int>(r.size() - b.size()); i >= 0; --i) {
    i64 c = r[i + b.size() - 1] * li % p;
    q[i] = c;
    if (!c) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = ((r[i + j] - c * b[j]) % p + p) % p;
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const Poly& a, const Poly& m, i64 p) { return divmod(a, m, p).second; }

Poly monic(const Poly& a, i64 p) {
  if (a.empty()) return a;
  i64 li = inv(a.back(), p);
  Poly r = a;
  for (auto& x : r) x = x * li % p;
  return r;
}

Poly gcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(Poly base, u64 e, const Poly& m, i64 p) {
  Poly r{1};
  base = mod(base, m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

Poly derivative(const Poly& a, i64 p) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<i64>(i % p) % p;
  trim(d);
  return d;
}

namespace {

// Distinct-degree factorization: (product of irreducibles of degree d, d).
std::vector<std::pair<Poly, int>> ddf(Poly f, i64 p) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1};
  Poly h = x;
  int d = 0;
  while (f.size() > 1) {
    ++d;
    if (2 * d > static_cast<int>(f.size()) - 1) {
      out.emplace_back(monic(f, p), static_cast<int>(f.size()) - 1);
      break;
    }
    h = powmod(h, static_cast<u64>(p), f, p);
    Poly g = gcd(f, sub(h, x, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = divmod(f, g, p).first;
      h = mod(h, f, p);
    }
  }
  return out;
}

void edf(const Poly& f, int d, i64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
  int n = static_cast<int>(f.size()) - 1;
  if (n == d) {
    out.push_back(monic(f, p));
    return;
  }
  std::uniform_int_distribution<i64> dist(0, p - 1);
  u64 e = 1;
  for (int i = 0; i < d; ++i) e *= static_cast<u64>(p);
  e = (e - 1) / 2;
  while (true) {
    Poly a(n);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (a.size() <= 1) continue;
    Poly b = powmod(a, e, f, p);
    b = sub(b, Poly{1}, p);
    Poly g = gcd(f, b, p);
    if (g.size() > 1 && g.size() < f.size()) {
      edf(g, d, p, rng, out);
      edf(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& f, i64 p) {
  if (p == 2) throw std::invalid_argument("equal-degree splitting needs odd p");
  std::mt19937_64 rng(0x5eed + static_cast<u64>(p));
  std::vector<Poly> out;
  for (auto& [g, d] : ddf(monic(f, p), p)) edf(g, d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fp

ModPFactorPattern factor_mod_p(const IntPoly& f, i64 p) {
  BigInt l = f.lc() % p;
  if (l == 0) throw std::invalid_argument("p divides the leading coefficient");
  ModPFactorPattern pat;
  pat.p = p;
  fp::Poly g = fp::monic(fp::reduce(f, p), p);
  fp::Poly dg = fp::derivative(g, p);
  fp::Poly common = fp::gcd(g, dg, p);
  pat.squarefree = common.size() <= 1 && !dg.empty();
  if (!pat.squarefree) {
    // Degrees of the squarefree part still describe the distinct roots.
    if (!dg.empty()) g = fp::divmod(g, common, p).first;
  }
  if (g.size() > 1) {
    for (auto& [h, d] : fp::ddf(g, p)) {
      int cnt = (static_cast<int>(h.size()) - 1) / d;
      for (int i = 0; i < cnt; ++i) pat.degrees.push_back(d);
    }
  }
  std::sort(pat.degrees.begin(), pat.degrees.end());
  return pat;
}

// ---------------------------------------------------------------- Zassenhaus

namespace {

using ZPoly = std::vector<BigInt>;

BigInt smod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(const ZPoly& a, const BigInt& m) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = smod(a[i], m);
  ztrim(r);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zmod(r, m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return zmod(r, m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  ZPoly nb = b;
  for (auto& c : nb) c = -c;
  return zadd(a, nb, m);
}

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  ZPoly r = zmod(a, m);
  if (r.size() < b.size()) return {{}, r};
  ZPoly q(r.size() - b.size() + 1);
  for (int i = static_cast<int>(r.size() - b.size()); i >= 0; --i) {
    BigInt c = r[i + b.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = smod(r[i + j] - c * b[j], m);
  }
  ztrim(q);
  ztrim(r);
  return {q, r};
}

ZPoly from_fp(const fp::Poly& a) { return ZPoly(a.begin(), a.end()); }

fp::Poly to_fp(const ZPoly& a, i64 p) {
  fp::Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<i64>(smod(a[i], p));
  fp::trim(r);
  return r;
}

// Extended gcd over F_p: s*g + t*h = 1.
std::pair<fp::Poly, fp::Poly> fp_bezout(const fp::Poly& g, const fp::Poly& h, i64 p) {
  fp::Poly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp::divmod(r0, r1, p);
    fp::Poly s2 = fp::sub(s0, fp::mul(q, s1, p), p);
    fp::Poly t2 = fp::sub(t0, fp::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::domain_error("factors not coprime mod p");
  i64 c = fp::inv(r0[0], p);
  for (auto& x : s0) x = x * c % p;
  for (auto& x : t0) x = x * c % p;
  return {s0, t0};
}

// Lift f = g*h (mod p), h monic, to modulus pk.
std::pair<ZPoly, ZPoly> hensel_two(const ZPoly& f, ZPoly g, ZPoly h, i64 p, const BigInt& pk) {
  auto [s0, t0] = fp_bezout(to_fp(g, p), to_fp(h, p), p);
  ZPoly s = from_fp(s0), t = from_fp(t0);
  BigInt m = p;
  while (m < pk) {
    BigInt m2 = m * m;
    if (m2 > pk) m2 = pk;
    ZPoly e = zsub(f, zmul(g, h, m2), m2);
    auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
    ZPoly g2 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
    ZPoly h2 = zadd(h, r, m2);
    ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
    auto [c, d] = zdivmod_monic(zmul(s, b, m2), h2, m2);
    s = zsub(s, d, m2);
    t = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g2, m2), m2);
    g = std::move(g2);
    h = std::move(h2);
    m = m2;
  }
  return {g, h};
}

// f == lc(f) * prod(facs) mod p; returns monic lifts mod pk.
void hensel_multi(const ZPoly& f, const std::vector<fp::Poly>& facs, i64 p, const BigInt& pk,
                  std::vector<ZPoly>& out) {
  if (facs.size() == 1) {
    // Make monic mod pk.
    BigInt l = f.back();
    BigInt li;
    {
      // inverse of l mod pk via extended Euclid
      BigInt a = smod(l, pk), b = pk, x0 = 1, x1 = 0;
      while (b != 0) {
        BigInt q = a / b;
        BigInt t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
      }
      li = smod(x0, pk);
    }
    ZPoly r = f;
    for (auto& c : r) c = smod(c * li, pk);
    ztrim(r);
    out.push_back(r);
    return;
  }
  size_t k = facs.size() / 2;
  std::vector<fp::Poly> a(facs.begin(), facs.begin() + k), b(facs.begin() + k, facs.end());
  fp::Poly gp{static_cast<i64>(smod(f.back(), p))};
  for (auto& x : a) gp = fp::mul(gp, x, p);
  fp::Poly hp{1};
  for (auto& x : b) hp = fp::mul(hp, x, p);
  auto [G, H] = hensel_two(f, from_fp(gp), from_fp(hp), p, pk);
  hensel_multi(G, a, p, pk, out);
  hensel_multi(H, b, p, pk, out);
}

IntPoly symmetric(const ZPoly& a, const BigInt& m) {
  std::vector<BigInt> v(a.size());
  BigInt half = m / 2;
  for (size_t i = 0; i < a.size(); ++i) {
    BigInt r = smod(a[i], m);
    if (r > half) r -= m;
    v[i] = r;
  }
  return IntPoly(std::move(v));
}

IntPoly pgcd(IntPoly a, IntPoly b) {
  a = a.primitive();
  b = b.primitive();
  while (!b.is_zero()) {
    // pseudo-remainder of a by b
    IntPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      IntPoly t = IntPoly::monomial(r.lc(), r.degree() - b.degree());
      r = r * b.lc() - t * b;
    }
    a = b;
    b = r.is_zero() ? r : r.primitive();
  }
  return a.primitive();
}

std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  int n = f.degree();
  if (n <= 1) return {f};
  BigInt lc = f.lc();
  i64 p = 3;
  for (;; p += 2) {
    if (!is_prime(static_cast<u64>(p))) continue;
    if (lc % p == 0) continue;
    auto pat = factor_mod_p(f, p);
    if (pat.squarefree) break;
  }
  fp::Poly fm = fp::reduce(f, p);
  auto facs = fp::factor_squarefree(fm, p);
  if (facs.size() == 1) return {f};
  // Coefficient bound for factors of lc*f.
  BigInt norm2 = 0;
  for (auto& c : f.coeffs()) norm2 += c * c;
  BigInt norm = mp::sqrt(norm2) + 1;
  BigInt bound = 2 * (BigInt(1) << n) * norm * (lc < 0 ? BigInt(-lc) : lc) + 1;
  BigInt pk = p;
  while (pk <= bound) pk *= p;
  std::vector<ZPoly> lifted;
  hensel_multi(ZPoly(f.coeffs().begin(), f.coeffs().end()), facs, p, pk, lifted);

  std::vector<IntPoly> result;
  IntPoly g = f;
  std::vector<ZPoly> rem = lifted;
  size_t s = 1;
  while (2 * s <= rem.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly prod{g.lc()};
      for (size_t i : idx) prod = zmul(prod, rem[i], pk);
      IntPoly cand = symmetric(prod, pk).primitive();
      if (cand.degree() > 0) {
        auto q = g.exact_div(cand);
        if (q) {
          result.push_back(cand);
          g = *q;
          std::vector<ZPoly> next;
          for (size_t i = 0; i < rem.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(rem[i]);
          rem = std::move(next);
          found = true;
          break;
        }
      }
      // next combination
      int k = static_cast<int>(s) - 1;
      while (k >= 0 && idx[k] == rem.size() - s + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (g.degree() > 0) result.push_back(g.primitive());
  return result;
}

}  // namespace

std::vector<std::pair<IntPoly, int>> factor_over_Z(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor zero polynomial");
  IntPoly prim = f.primitive();
  std::vector<std::pair<IntPoly, int>> out;
  if (prim.degree() == 0) return out;
  IntPoly g = pgcd(prim, prim.derivative());
  IntPoly sqf = g.degree() > 0 ? *prim.exact_div(g) : prim;
  sqf = sqf.primitive();
  std::vector<IntPoly> irr;
  // Pull out the factor x first so reductions mod p stay squarefree.
  for (auto& h : zassenhaus(sqf)) irr.push_back(h.primitive());
  IntPoly rest = prim;
  for (auto& h : irr) {
    int mult = 0;
    while (true) {
      auto q = rest.exact_div(h);
      if (!q) break;
      rest = *q;
      ++mult;
    }
    out.emplace_back(h, mult);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return out;
}

}  // namespace paramod
