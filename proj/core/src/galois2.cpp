#include "paramod/galois2.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cctype>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace paramod {

// ---------------------------------------------------------------- permutations

Perm perm_identity() { return {0, 1, 2, 3, 4, 5}; }

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r{};
  for (int i = 0; i < 6; ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_from_cycles(const std::vector<std::vector<int>>& cycles) {
  Perm p = perm_identity();
  for (auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] > 5) throw std::invalid_argument("cycle entry out of range");
      p[static_cast<size_t>(c[i])] = static_cast<std::uint8_t>(c[(i + 1) % c.size()]);
    }
  }
  return p;
}

CycleType cycle_type(const Perm& p) {
  CycleType t;
  std::array<bool, 6> seen{};
  for (int i = 0; i < 6; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.begin(), t.end());
  return t;
}

std::string cycle_type_str(const CycleType& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

double PermGroup::density(const CycleType& t) const {
  auto it = type_counts.find(t);
  return it == type_counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(order());
}

bool PermGroup::transitive() const {
  std::set<int> orbit;
  for (auto& g : elements) orbit.insert(g[0]);
  return orbit.size() == 6;
}

PermGroup generate_group(std::string name, std::vector<Perm> generators) {
  PermGroup g;
  g.name = std::move(name);
  g.generators = std::move(generators);
  std::set<Perm> seen{perm_identity()};
  std::vector<Perm> frontier{perm_identity()};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (auto& x : frontier)
      for (auto& s : g.generators) {
        Perm y = perm_compose(s, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  g.elements.assign(seen.begin(), seen.end());
  for (auto& e : g.elements) ++g.type_counts[cycle_type(e)];
  return g;
}

namespace {

using C = std::vector<std::vector<int>>;

PermGroup make_named(const std::string& name) {
  auto P = [](C c) { return perm_from_cycles(c); };
  if (name == "S6") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2, 3, 4, 5}})});
  if (name == "A6") return generate_group(name, {P({{0, 1, 2}}), P({{1, 2, 3, 4, 5}})});
  // PGL2(5) and PSL2(5) on P^1(F_5), with infinity at point 5.
  if (name == "S5on6") return generate_group(name, {P({{0, 1, 2, 3, 4}}), P({{1, 2, 4, 3}}), P({{0, 5}, {1, 4}})});
  if (name == "A5on6") return generate_group(name, {P({{0, 1, 2, 3, 4}}), P({{1, 4}, {2, 3}}), P({{0, 5}, {1, 4}})});
  if (name == "S3wr2") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2}}), P({{0, 3}, {1, 4}, {2, 5}})});
  if (name == "S3xS3") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2}}), P({{3, 4}}), P({{3, 4, 5}})});
  if (name == "S5") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2, 3, 4}})});
  if (name == "A5") return generate_group(name, {P({{0, 1, 2}}), P({{0, 1, 2, 3, 4}})});
  if (name == "F20") return generate_group(name, {P({{0, 1, 2, 3, 4}}), P({{1, 2, 4, 3}})});
  if (name == "D5") return generate_group(name, {P({{0, 1, 2, 3, 4}}), P({{1, 4}, {2, 3}})});
  if (name == "C5") return generate_group(name, {P({{0, 1, 2, 3, 4}})});
  if (name == "S4") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2, 3}})});
  if (name == "A4") return generate_group(name, {P({{0, 1, 2}}), P({{1, 2, 3}})});
  if (name == "D4") return generate_group(name, {P({{0, 1, 2, 3}}), P({{0, 2}})});
  if (name == "C4") return generate_group(name, {P({{0, 1, 2, 3}})});
  if (name == "V4") return generate_group(name, {P({{0, 1}, {2, 3}}), P({{0, 2}, {1, 3}})});
  if (name == "S3") return generate_group(name, {P({{0, 1}}), P({{0, 1, 2}})});
  if (name == "C3") return generate_group(name, {P({{0, 1, 2}})});
  if (name == "C2") return generate_group(name, {P({{0, 1}})});
  if (name == "trivial") return generate_group(name, {});
  if (name.rfind("dihedral(", 0) == 0 && name.size() == 11 && name[10] == ')') {
    int m = name[9] - '0';
    if (m < 3 || m > 6) throw std::invalid_argument("dihedral degree must be 3..6");
    std::vector<int> rot(static_cast<size_t>(m));
    std::iota(rot.begin(), rot.end(), 0);
    C refl;
    for (int i = 1; i < m - i; ++i) refl.push_back({i, m - i});
    return generate_group(name, {P({rot}), P(refl)});
  }
  throw std::invalid_argument("unknown group: " + name);
}

}  // namespace

const PermGroup& build_group(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PermGroup> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_named(name)).first;
  return it->second;
}

std::vector<std::string> sextic_catalog() { return {"S6", "A6", "S5on6", "A5on6", "S3wr2"}; }
std::vector<std::string> quintic_catalog() { return {"S5", "A5", "F20", "D5", "C5"}; }

// ---------------------------------------------------------------- F_2 linear algebra

F2Poly f2_mul(F2Poly a, F2Poly b) {
  F2Poly r = 0;
  for (int i = 0; b >> i; ++i)
    if ((b >> i) & 1) r ^= a << i;
  return r;
}

F2Poly f2_divexact(F2Poly a, F2Poly b) {
  if (b == 0) throw std::invalid_argument("division by zero polynomial");
  int db = static_cast<int>(std::bit_width(b)) - 1;
  F2Poly q = 0;
  while (a && static_cast<int>(std::bit_width(a)) - 1 >= db) {
    int s = static_cast<int>(std::bit_width(a)) - 1 - db;
    q |= F2Poly(1) << s;
    a ^= b << s;
  }
  if (a) throw std::invalid_argument("inexact F_2 polynomial division");
  return q;
}

std::string f2_str(F2Poly a) {
  if (!a) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = std::bit_width(a) - 1; i >= 0; --i) {
    if (!((a >> i) & 1)) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0)
      os << "1";
    else if (i == 1)
      os << "x";
    else
      os << "x^" << i;
  }
  return os.str();
}

F2Poly charpoly_on_V(const CycleType& type) {
  if (std::accumulate(type.begin(), type.end(), 0) != 6 ||
      std::any_of(type.begin(), type.end(), [](int c) { return c <= 0; }))
    throw std::invalid_argument("not a partition of 6");
  F2Poly p = 1;
  for (int c : type) p = f2_mul(p, (F2Poly(1) << c) | 1);
  return f2_divexact(p, 0b101);
}

F2Mat4 matrix_on_V(const Perm& p) {
  // Basis b_i = e_i + e_5 (i < 4) of W0/<1>; b_4 = e_4 + e_5 equals b_0 + b_1 + b_2 + b_3.
  F2Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    unsigned w = (1u << p[i]) ^ (1u << p[5]);
    unsigned w4 = (w >> 4) & 1;
    std::uint8_t row = 0;
    for (int j = 0; j < 4; ++j)
      if (((w >> j) & 1) ^ w4) row |= static_cast<std::uint8_t>(1u << j);
    m[i] = row;
  }
  return m;
}

F2Poly charpoly(const F2Mat4& m) {
  std::array<std::array<F2Poly, 4>, 4> a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = ((m[i] >> j) & 1) ^ (i == j ? 0b10 : 0);
  std::array<int, 4> perm{0, 1, 2, 3};
  F2Poly det = 0;
  do {
    F2Poly t = 1;
    for (int i = 0; i < 4; ++i) t = f2_mul(t, a[i][perm[i]]);
    det ^= t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

namespace {

using VecSet = std::bitset<16>;

std::uint8_t apply(const F2Mat4& m, std::uint8_t v) {
  std::uint8_t r = 0;
  for (int i = 0; i < 4; ++i)
    if ((v >> i) & 1) r ^= m[i];
  return r;
}

VecSet span_closure(VecSet s, const std::vector<F2Mat4>& mats) {
  s.set(0);
  bool grew = true;
  while (grew) {
    grew = false;
    for (unsigned v = 0; v < 16; ++v) {
      if (!s[v]) continue;
      for (auto& m : mats) {
        unsigned w = apply(m, static_cast<std::uint8_t>(v));
        if (!s[w]) s.set(w), grew = true;
      }
      for (unsigned u = 0; u < 16; ++u)
        if (s[u] && !s[u ^ v]) s.set(u ^ v), grew = true;
    }
  }
  return s;
}

int dim_of(const VecSet& s) { return std::bit_width(s.count()) - 1; }

}  // namespace

std::vector<int> composition_factors(const std::vector<Perm>& generators) {
  std::vector<F2Mat4> mats;
  for (auto& g : generators) mats.push_back(matrix_on_V(g));
  std::vector<int> dims;
  VecSet u;
  u.set(0);
  while (dim_of(u) < 4) {
    VecSet best;
    int best_dim = 5;
    for (unsigned v = 1; v < 16; ++v) {
      if (u[v]) continue;
      VecSet s = u;
      s.set(v);
      VecSet w = span_closure(s, mats);
      if (dim_of(w) < best_dim) best = w, best_dim = dim_of(w);
    }
    dims.push_back(best_dim - dim_of(u));
    u = best;
  }
  std::sort(dims.begin(), dims.end());
  return dims;
}

// ---------------------------------------------------------------- Frobenius sampling

GroupSample sample_galois_group(const IntPoly& f, i64 prime_bound) {
  int deg = f.degree();
  if (deg != 5 && deg != 6) throw std::invalid_argument("sampling expects degree 5 or 6");
  BigInt disc = discriminant(f);
  if (disc == 0) throw NonSquarefree("polynomial is not squarefree");
  GroupSample s;
  for (i64 p = 3; p <= prime_bound; p += 2) {
    if (!is_prime(static_cast<u64>(p)) || f.lc() % p == 0 || disc % p == 0) continue;
    auto pat = factor_mod_p(f, p);
    if (!pat.squarefree) continue;
    CycleType t = pat.degrees;
    if (deg == 5) t.push_back(1);
    std::sort(t.begin(), t.end());
    ++s.observed[t];
    ++s.samples;
  }
  std::vector<std::string> alive;
  for (auto& name : deg == 6 ? sextic_catalog() : quintic_catalog()) {
    const PermGroup& g = build_group(name);
    std::string reason;
    for (auto& [t, n] : s.observed)
      if (!g.has_type(t)) {
        reason = "lacks observed type " + cycle_type_str(t);
        break;
      }
    if (reason.empty())
      for (auto& [t, n] : g.type_counts)
        if (g.density(t) >= 0.05 && !s.observed.count(t)) {
          reason = "type " + cycle_type_str(t) + " never observed";
          break;
        }
    if (reason.empty())
      alive.push_back(name);
    else
      s.eliminated.push_back(name + ": " + reason);
  }
  if (alive.size() != 1)
    throw AmbiguousGroup(alive.empty() ? "no catalog group matches the Frobenius data"
                                       : "several catalog groups match; raise the prime bound",
                         alive);
  s.group = alive.front();
  return s;
}

// ---------------------------------------------------------------- classification

std::string InfoCode::str() const {
  switch (tag) {
    case Tag::U:
      return "u";
    case Tag::N:
      return std::to_string(conductors.at(0));
    case Tag::Pair:
      return std::to_string(conductors.at(0)) + "x" + std::to_string(conductors.at(1));
    case Tag::Q:
      return "q";
    case Tag::Wr72:
      return "wr72";
    case Tag::S6:
      return "S6";
    case Tag::Other:
      return group;
  }
  return "?";
}

InfoCode InfoCode::parse(const std::string& text) {
  InfoCode c;
  if (text == "u") return c;
  if (text == "q") return c.tag = Tag::Q, c;
  if (text == "wr72") return c.tag = Tag::Wr72, c;
  if (text == "S6") return c.tag = Tag::S6, c;
  auto num = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw std::invalid_argument("bad info code: " + text);
    return static_cast<i64>(std::stoll(s));
  };
  auto x = text.find('x');
  if (x != std::string::npos) {
    c.tag = Tag::Pair;
    c.conductors = {num(text.substr(0, x)), num(text.substr(x + 1))};
    std::sort(c.conductors.begin(), c.conductors.end());
    return c;
  }
  c.tag = Tag::N;
  c.conductors = {num(text)};
  return c;
}

IntPoly cubic_resolvent(const IntPoly& q) {
  if (q.degree() != 4) throw std::invalid_argument("cubic resolvent needs a quartic");
  BigInt e = q.coeff(0), d = q.coeff(1), c = q.coeff(2), b = q.coeff(3), a = q.coeff(4);
  return IntPoly({-(b * b * e - 4 * a * c * e + a * d * d), b * d - 4 * a * e, -c, BigInt(1)});
}

i64 odd_squarefree_kernel(const BigInt& d) {
  if (d == 0) throw std::invalid_argument("kernel of zero");
  auto [fs, rest] = trial_factor(d, 1000000);
  i64 k = 1;
  for (auto& [p, e] : fs)
    if (p != 2 && e % 2 == 1) k *= p;
  if (rest > 1) {
    if (rest > BigInt(std::numeric_limits<i64>::max()) || !is_prime(static_cast<u64>(rest)))
      throw std::runtime_error("discriminant cofactor too large to classify");
    k *= static_cast<i64>(rest);
  }
  return k;
}

namespace {

std::string quartic_group(const IntPoly& q) {
  auto rf = factor_over_Z(cubic_resolvent(q));
  bool square = is_square_int(discriminant(q)).is_square;
  if (rf.size() == 1 && rf[0].first.degree() == 3) return square ? "A4" : "S4";
  int linear = 0;
  for (auto& [g, m] : rf)
    if (g.degree() == 1) linear += m;
  return linear == 3 ? "V4" : "D4";
}

std::vector<Perm> relabel(const PermGroup& g, int offset) {
  std::vector<Perm> out;
  for (auto& s : g.generators) {
    Perm p = perm_identity();
    for (int i = 0; i + offset < 6; ++i)
      if (s[i] != i) p[i + offset] = static_cast<std::uint8_t>(s[i] + offset);
    out.push_back(p);
  }
  return out;
}

}  // namespace

Classification classify_two_torsion(const IntPoly& f, i64 prime_bound) {
  if (f.degree() != 5 && f.degree() != 6) throw std::invalid_argument("classification expects degree 5 or 6");
  if (discriminant(f) == 0) throw NonSquarefree("polynomial is not squarefree");
  Classification out;
  auto& mod = out.module;
  auto factors = factor_over_Z(f.primitive());
  if (f.degree() == 5) {
    FactorGroup inf;
    inf.degree = 1;
    inf.group = "trivial";
    mod.factors.push_back(inf);
  }
  for (auto& [g, m] : factors) {
    FactorGroup fg;
    fg.factor = g;
    fg.degree = g.degree();
    switch (fg.degree) {
      case 1:
        fg.group = "trivial";
        break;
      case 2:
        fg.group = "C2";
        break;
      case 3: {
        BigInt d = discriminant(g);
        fg.group = is_square_int(d).is_square ? "C3" : "S3";
        fg.conductor = odd_squarefree_kernel(d);
        break;
      }
      case 4:
        fg.group = quartic_group(g);
        if (fg.group == "S4" || fg.group == "A4") fg.conductor = odd_squarefree_kernel(discriminant(cubic_resolvent(g)));
        break;
      default: {
        auto s = sample_galois_group(g, prime_bound);
        fg.group = s.group;
        out.samples.push_back(std::move(s));
      }
    }
    mod.factors.push_back(fg);
  }
  std::stable_sort(mod.factors.begin(), mod.factors.end(),
                   [](const FactorGroup& a, const FactorGroup& b) { return a.degree < b.degree; });
  int offset = 0;
  for (auto& fg : mod.factors) {
    for (auto& p : relabel(build_group(fg.group), offset)) mod.generators.push_back(p);
    offset += fg.degree;
  }
  mod.composition_factor_dims = composition_factors(mod.generators);

  int twos = static_cast<int>(std::count(mod.composition_factor_dims.begin(), mod.composition_factor_dims.end(), 2));
  bool four = mod.composition_factor_dims.back() == 4;
  auto& code = out.code;
  if (four) {
    const std::string& g = mod.factors.back().group;
    if (g == "S5" || g == "S5on6")
      code.tag = InfoCode::Tag::Q;
    else if (g == "S3wr2")
      code.tag = InfoCode::Tag::Wr72;
    else if (g == "S6")
      code.tag = InfoCode::Tag::S6;
    else
      code.tag = InfoCode::Tag::Other, code.group = g;
  } else if (twos > 0) {
    for (auto& fg : mod.factors)
      if (fg.group == "S3" || fg.group == "C3" || fg.group == "S4" || fg.group == "A4")
        mod.exceptional_conductors.push_back(fg.conductor);
    std::sort(mod.exceptional_conductors.begin(), mod.exceptional_conductors.end());
    if (static_cast<int>(mod.exceptional_conductors.size()) != twos)
      throw std::logic_error("exceptional factors do not match composition factors");
    code.tag = twos == 1 ? InfoCode::Tag::N : InfoCode::Tag::Pair;
    code.conductors = mod.exceptional_conductors;
  }
  return out;
}

// ---------------------------------------------------------------- field feasibility

FeasibilityResult feasibility_filter(const FieldFeasibility& rec, const Factorization& n) {
  auto reject = [](std::string why) { return FeasibilityResult{false, std::move(why)}; };
  if (rec.degree == 6 && rec.disc_ord2 > 6) return reject("ord_2(d_K) > 6 for a sextic field");
  if (rec.degree == 5 && rec.disc_ord2 > 4) return reject("ord_2(d_K) > 4 for a quintic field");
  for (int f : rec.residue_degrees_over_2) {
    if (f == 5) return reject("a prime over 2 has residue degree 5");
    if (rec.degree == 5 && f == 3) return reject("a prime over 2 has residue degree 3 in a quintic field");
  }
  for (auto& [p, e] : rec.disc_odd) {
    int t = n.exponent(p);
    if (t == 0) return reject("odd prime " + std::to_string(p) + " ramifies but does not divide N");
    bool ok = e == t || (rec.degree == 6 && t == 2 && (e == 2 || e == 3));
    if (!ok) return reject("ord_" + std::to_string(p) + "(d_K) = " + std::to_string(e) + " incompatible with tau = " + std::to_string(t));
  }
  return {};
}

}  // namespace paramod
