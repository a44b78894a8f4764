#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramod/arith.hpp"
#include "paramod/polyfield.hpp"

namespace paramod {

using Perm = std::array<std::uint8_t, 6>;
using CycleType = std::vector<int>;  // sorted ascending, sums to 6

Perm perm_identity();
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_from_cycles(const std::vector<std::vector<int>>& cycles);
CycleType cycle_type(const Perm& p);
std::string cycle_type_str(const CycleType& t);

struct PermGroup {
  std::string name;
  std::vector<Perm> generators;
  std::vector<Perm> elements;
  std::map<CycleType, int> type_counts;

  size_t order() const { return elements.size(); }
  bool has_type(const CycleType& t) const { return type_counts.count(t) > 0; }
  double density(const CycleType& t) const;
  bool transitive() const;
};

PermGroup generate_group(std::string name, std::vector<Perm> generators);

// Catalog names: S6, A6, S5on6, A5on6, S3wr2, S3xS3, S5, A5, F20, D5, C5, D4, C2, C3, S3, trivial,
// and dihedral(m) for m = 3..6 acting on the first m points.
const PermGroup& build_group(const std::string& name);
std::vector<std::string> sextic_catalog();
std::vector<std::string> quintic_catalog();

// Polynomials over F_2 as bit masks, bit i = coefficient of x^i.
using F2Poly = std::uint32_t;
F2Poly f2_mul(F2Poly a, F2Poly b);
F2Poly f2_divexact(F2Poly a, F2Poly b);
std::string f2_str(F2Poly a);

// Characteristic polynomial of a permutation of the given type on W0/<1>.
F2Poly charpoly_on_V(const CycleType& type);

// 4x4 matrix over F_2 of a permutation on W0/<1>; row i is the image of basis vector i as a bit mask.
using F2Mat4 = std::array<std::uint8_t, 4>;
F2Mat4 matrix_on_V(const Perm& p);
F2Poly charpoly(const F2Mat4& m);

// Composition factor dimensions of V under the group generated by the given permutations.
std::vector<int> composition_factors(const std::vector<Perm>& generators);

class AmbiguousGroup : public std::runtime_error {
 public:
  AmbiguousGroup(const std::string& what, std::vector<std::string> candidates)
      : std::runtime_error(what), candidates(std::move(candidates)) {}
  std::vector<std::string> candidates;
};

struct GroupSample {
  std::string group;
  int samples = 0;
  std::map<CycleType, int> observed;
  std::vector<std::string> eliminated;  // "name: reason"
};

// Frobenius cycle-type sampling for an irreducible quintic or sextic; quintics gain a fixed point.
GroupSample sample_galois_group(const IntPoly& f, i64 prime_bound = 2000);

struct InfoCode {
  enum class Tag { U, N, Pair, Q, Wr72, S6, Other };
  Tag tag = Tag::U;
  std::vector<i64> conductors;  // N_E for n; (N1, N2) sorted for pair
  std::string group;            // group name for Other

  std::string str() const;
  static InfoCode parse(const std::string& text);
  bool operator==(const InfoCode& o) const = default;
};

struct FactorGroup {
  IntPoly factor;  // empty for the formal root at infinity
  int degree = 0;
  std::string group;
  i64 conductor = 1;  // product of odd primes with odd valuation in the defining cubic discriminant
};

struct TwoTorsionModule {
  std::vector<FactorGroup> factors;
  std::vector<Perm> generators;
  std::vector<int> composition_factor_dims;
  std::vector<i64> exceptional_conductors;
};

struct Classification {
  TwoTorsionModule module;
  InfoCode code;
  std::vector<GroupSample> samples;
};

class NonSquarefree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

IntPoly cubic_resolvent(const IntPoly& quartic);
// Product of odd primes with odd valuation in d.
i64 odd_squarefree_kernel(const BigInt& d);

Classification classify_two_torsion(const IntPoly& f, i64 prime_bound = 2000);

struct FieldFeasibility {
  int degree = 6;
  int disc_ord2 = 0;
  std::vector<int> residue_degrees_over_2;
  std::vector<std::pair<i64, int>> disc_odd;
};

struct FeasibilityResult {
  bool accept = true;
  std::string reason;
};

FeasibilityResult feasibility_filter(const FieldFeasibility& rec, const Factorization& n);

}  // namespace paramod
