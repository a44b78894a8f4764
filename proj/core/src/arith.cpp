#include "paramod/arith.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace paramod {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 tilde_ell(i64 ell) {
  if (ell == 2) return 8;
  if (ell == 3) return 9;
  return ell;
}

bool pm1_mod(i64 p, i64 m) {
  i64 r = ((p % m) + m) % m;
  return r == 1 || r == m - 1;
}

}  // namespace

int Factorization::exponent(i64 p) const {
  for (auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

std::vector<i64> Factorization::primes() const {
  std::vector<i64> out;
  for (auto& f : factors) out.push_back(f.first);
  return out;
}

i64 Factorization::radical() const {
  i64 r = 1;
  for (auto& f : factors) r *= f.first;
  return r;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](auto& f) { return f.second == 1; });
}

bool Factorization::is_square() const {
  return std::all_of(factors.begin(), factors.end(), [](auto& f) { return f.second % 2 == 0; });
}

std::string Factorization::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) os << "*";
    os << factors[i].first;
    if (factors[i].second > 1) os << "^" << factors[i].second;
  }
  return os.str();
}

Place Place::finite(i64 p) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("place must be a prime");
  return Place(p);
}

std::string Place::str() const { return is_infinite() ? "inf" : std::to_string(p_); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(i64 n) {
  if (n < 1) throw std::invalid_argument("factorize expects n >= 1");
  Factorization f;
  f.value = n;
  u64 m = static_cast<u64>(n);
  auto take = [&](u64 p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.factors.emplace_back(static_cast<i64>(p), e);
  };
  take(2);
  take(3);
  for (u64 p = 5; p * p <= m; p += 6) {
    take(p);
    take(p + 2);
    if (m > 1 && is_prime(m)) break;
  }
  if (m > 1) f.factors.emplace_back(static_cast<i64>(m), 1);
  std::sort(f.factors.begin(), f.factors.end());
  return f;
}

int valuation(i64 n, i64 p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int big_omega(i64 n) {
  int s = 0;
  for (auto& f : factorize(n).factors) s += f.second;
  return s;
}

int omega_ell(i64 n, i64 ell) {
  i64 m = tilde_ell(ell);
  int s = 0;
  for (auto& [p, e] : factorize(n).factors)
    if (pm1_mod(p, m)) s += e;
  return s;
}

int varpi_ell(i64 n, i64 ell) {
  if (gcd(n, ell) != 1) throw std::invalid_argument("varpi_ell needs gcd(N, ell) = 1");
  auto f = factorize(n);
  i64 m = tilde_ell(ell);
  int distinct = static_cast<int>(f.factors.size());
  int good = 0;
  for (auto& fp : f.factors)
    if (pm1_mod(fp.first, m)) ++good;
  if (ell >= 5) return good;
  if (good == distinct) return distinct;
  return std::max(0, distinct - 1);
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi needs odd positive n");
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int chi(i64 d, i64 p) {
  if (d % p == 0) throw std::invalid_argument("chi needs p not dividing d");
  return jacobi(d, p);
}

i64 p_star(i64 p) { return p % 4 == 1 ? p : -p; }

bool pm1_mod8(i64 p) { return pm1_mod(p, 8); }

int hilbert(i64 a, i64 b, const Place& place) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (place.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  i64 p = place.prime();
  int alpha = 0, beta = 0;
  while (a % p == 0) {
    a /= p;
    ++alpha;
  }
  while (b % p == 0) {
    b /= p;
    ++beta;
  }
  if (p != 2) {
    int s = 1;
    if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
    if (beta & 1) s *= jacobi(a, p);
    if (alpha & 1) s *= jacobi(b, p);
    return s;
  }
  auto eps = [](i64 u) { return static_cast<int>((((u % 4) + 4) % 4 == 3) ? 1 : 0); };
  auto omega = [](i64 u) {
    i64 r = ((u % 8) + 8) % 8;
    return (r == 3 || r == 5) ? 1 : 0;
  };
  int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
  return (e & 1) ? -1 : 1;
}

std::vector<Place> hilbert_nontrivial_places(i64 a, i64 b) {
  std::set<i64> ps{2};
  for (i64 x : {a, b}) {
    i64 m = x < 0 ? -x : x;
    for (auto& f : factorize(m).factors) ps.insert(f.first);
  }
  std::vector<Place> out;
  if (hilbert(a, b, Place::infinite()) == -1) out.push_back(Place::infinite());
  for (i64 p : ps)
    if (hilbert(a, b, Place::finite(p)) == -1) out.push_back(Place::finite(p));
  return out;
}

}  // namespace paramod
