#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace paramod {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct Factorization {
  i64 value = 1;
  std::vector<std::pair<i64, int>> factors;

  int exponent(i64 p) const;
  bool divides_prime(i64 p) const { return exponent(p) > 0; }
  std::vector<i64> primes() const;
  i64 radical() const;
  bool squarefree() const;
  bool is_square() const;
  std::string str() const;
};

class Place {
 public:
  static Place infinite() { return Place(0); }
  static Place finite(i64 p);
  bool is_infinite() const { return p_ == 0; }
  i64 prime() const { return p_; }
  std::string str() const;
  bool operator==(const Place&) const = default;

 private:
  explicit Place(i64 p) : p_(p) {}
  i64 p_;
};

bool is_prime(u64 n);
Factorization factorize(i64 n);
int valuation(i64 n, i64 p);
i64 gcd(i64 a, i64 b);

int big_omega(i64 n);
int omega_ell(i64 n, i64 ell);
int varpi_ell(i64 n, i64 ell);

int jacobi(i64 a, i64 n);
int chi(i64 d, i64 p);
i64 p_star(i64 p);

int hilbert(i64 a, i64 b, const Place& place);
// Places where (a,b) is -1; always even in number.
std::vector<Place> hilbert_nontrivial_places(i64 a, i64 b);

// True when n is 1 mod 8 or 7 mod 8 (the mod-8 part of the Omega_2 count).
bool pm1_mod8(i64 p);

}  // namespace paramod
