#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "paramod/arith.hpp"
#include "paramod/polyfield.hpp"

namespace paramod {

// Genus-2 model y^2 + G(x) y = F(x).
struct CurveModel {
  IntPoly F;
  IntPoly G;
  std::string label;

  // h = G^2 + 4F, the polynomial of the isomorphic model (2y + G)^2 = h.
  IntPoly h() const;

  // Build a model for y^2 = f. When f = g^2 (mod 4) for some g of degree <= 3 with
  // coefficients in {0, 1}, the 2-adically smaller model y^2 + g y = (f - g^2)/4 is used.
  static CurveModel from_hyperelliptic(const IntPoly& f, std::string label = {});
};

struct EulerFactor {
  i64 p = 0;
  i64 e1 = 0;
  i64 e2 = 0;

  // Coefficients of L_p(T) = 1 - e1 T + e2 T^2 - p e1 T^3 + p^2 T^4, constant term first.
  std::array<i64, 5> coeffs() const;
  i64 value_at(i64 t) const;
  // Maximal deviation of |alpha| / sqrt(p) from 1 over the reciprocal roots.
  double purity_defect() const;
};

struct CurveDisc {
  BigInt delta;
  int two_shift = 0;  // delta = 2^two_shift * disc6(h)
  std::vector<std::pair<i64, int>> odd_factors;  // odd primes below the trial bound
  BigInt odd_cofactor;                             // part of |delta| left over
};

// Degree-6 discriminant of a polynomial of degree <= 6 viewed as a binary sextic.
BigInt disc6(const IntPoly& h);

bool genus_two(const CurveModel& c);
CurveDisc model_discriminant(const CurveModel& c);
bool is_good_prime(const CurveModel& c, i64 p);

// Points on the smooth projective model over F_{p^r}, r in {1, 2}.
i64 count_points(const CurveModel& c, i64 p, int r);
EulerFactor euler_factor(const CurveModel& c, i64 p);

// True iff ord_q(delta) = 22 ord_q(m) for every prime q | m.
bool mild_check(const CurveModel& c, i64 m);
bool mild_check(const CurveDisc& d, i64 m);

}  // namespace paramod
