#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paramod/arith.hpp"

namespace paramod {

using BigInt = boost::multiprecision::cpp_int;

// Integer polynomial, constant term first, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  static IntPoly from_ints(const std::vector<i64>& coeffs);
  static IntPoly monomial(const BigInt& c, int deg);
  static IntPoly parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const BigInt& lc() const;
  BigInt coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt eval(const BigInt& x) const;
  IntPoly derivative() const;
  BigInt content() const;
  IntPoly primitive() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const BigInt& k) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  // Exact division over Z; nullopt when the quotient is not integral.
  std::optional<IntPoly> exact_div(const IntPoly& d) const;

  std::string str() const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

struct ModPFactorPattern {
  i64 p = 0;
  std::vector<int> degrees;
  bool squarefree = true;
};

BigInt resultant(const IntPoly& f, const IntPoly& g);
BigInt discriminant(const IntPoly& f);
BigInt sylvester_determinant(const IntPoly& f, const IntPoly& g);

std::vector<std::pair<IntPoly, int>> factor_over_Z(const IntPoly& f);
ModPFactorPattern factor_mod_p(const IntPoly& f, i64 p);

struct SquareTest {
  bool is_square = false;
  BigInt root;
};
SquareTest is_square_int(const BigInt& n);

// ord_p of a nonzero big integer.
int big_valuation(BigInt n, i64 p);
// Factorization of |n| restricted to primes below bound; the cofactor is returned separately.
std::pair<std::vector<std::pair<i64, int>>, BigInt> trial_factor(BigInt n, i64 bound);

// Polynomial arithmetic over F_p, coefficients in [0, p).
namespace fp {
using Poly = std::vector<i64>;
Poly reduce(const IntPoly& f, i64 p);
void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, i64 p);
Poly sub(const Poly& a, const Poly& b, i64 p);
Poly mod(const Poly& a, const Poly& m, i64 p);
Poly gcd(Poly a, Poly b, i64 p);
Poly powmod(Poly base, u64 e, const Poly& m, i64 p);
Poly monic(const Poly& a, i64 p);
Poly derivative(const Poly& a, i64 p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, i64 p);
i64 inv(i64 a, i64 p);
// Monic irreducible factors of a squarefree polynomial.
std::vector<Poly> factor_squarefree(const Poly& f, i64 p);
}  // namespace fp

}  // namespace paramod
