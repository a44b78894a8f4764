#include "paramod/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace paramod {

namespace {

using Status = RuleResult::Status;
using Outcome = Verdict::Outcome;

std::vector<i64> merge(std::vector<i64> a, const std::vector<i64>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<i64> primes_of(i64 n) { return n <= 1 ? std::vector<i64>{} : factorize(n).primes(); }

std::string join(const std::vector<i64>& v, const char* sep = ",") {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

// Collects witness terms and oracle answers for one rule evaluation.
class Ctx {
 public:
  Ctx(const FieldOracle& o, std::string rule) : o_(o) { r_.rule = std::move(rule); }

  i64 w(const std::string& fn, std::vector<i64> args) {
    WitnessTerm t{fn, std::move(args), 0};
    t.value = replay_witness(t.fn, t.args);
    r_.witness.push_back(t);
    return t.value;
  }

  OracleAnswer ask(const OracleQuery& q) {
    OracleAnswer a = o_.answer(q);
    if (a.known())
      r_.oracle.push_back({q, a});
    else
      r_.missing.push_back(q);
    return a;
  }

  // Records a demand the oracle file cannot answer.
  void need(const OracleQuery& q) { r_.missing.push_back(q); }

  // Tri-state yes test: 1 yes, 0 no, -1 unknown.
  int yes(const OracleQuery& q) {
    OracleAnswer a = ask(q);
    if (!a.known()) return -1;
    return a.yes() ? 1 : 0;
  }

  int count_is(const OracleQuery& q, int n) {
    OracleAnswer a = ask(q);
    if (!a.known()) return -1;
    return a.count_is(n) ? 1 : 0;
  }

  RuleResult done(Status s, std::string note = {}) {
    r_.status = s;
    r_.note = std::move(note);
    if (s != Status::Blocked) r_.missing.clear();
    return std::move(r_);
  }

  // Conjunction of tri-state conditions: any 0 holds, else any -1 blocks, else eliminates.
  RuleResult conclude(const std::vector<int>& conds, const std::string& note) {
    bool unknown = false;
    for (int c : conds) {
      if (c == 0) return done(Status::Holds, "hypothesis fails");
      if (c < 0) unknown = true;
    }
    return unknown ? done(Status::Blocked, "awaiting oracle data") : done(Status::Eliminates, note);
  }

  const FieldOracle& oracle() const { return o_; }

 private:
  const FieldOracle& o_;
  RuleResult r_;
};

OracleQuery fq(QueryKind k, const std::string& field, std::vector<i64> S = {}) { return make_field_query(k, field, std::move(S)); }

OracleQuery split_query(const std::string& field, i64 p, std::vector<i64> S) {
  OracleQuery q = make_field_query(QueryKind::SplitInLambdaCr, field, std::move(S));
  q.p = p;
  return q;
}

OracleQuery inert_query(const std::string& field, i64 p) {
  OracleQuery q;
  q.kind = QueryKind::InertInF;
  q.field = field;
  q.p = p;
  return q;
}

int mod8(Ctx& c, i64 p) { return static_cast<int>(c.w("mod", {c.w("p_star", {p}), 8})); }

// ------------------------------------------------------------ rules for every structure

RuleResult rule_tau_bound(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "tau.bound");
  for (auto& [p, e] : c.tau)
    if (e >= 3) {
      x.w("exponent", {c.N, p});
      return x.done(Status::Eliminates, "semistable conductor exponent exceeds 2");
    }
  return x.done(Status::Inapplicable);
}

RuleResult rule_schoof31(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "schoof31");
  if (c.N > 31) return x.done(Status::Inapplicable);
  for (auto& [p, e] : c.tau)
    if (e > 1) return x.done(Status::Inapplicable);
  return x.done(Status::Eliminates, "square-free N <= 31: only J0(N) factors occur");
}

// ------------------------------------------------------------ unipotent rules

RuleResult rule_nilpgenbd(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "nilpgenbd");
  i64 s = x.w("big_omega", {c.N}) + x.w("omega2", {c.N});
  if (4 > s) return x.done(Status::Eliminates, "4 > Omega(N) + Omega_2(N)");
  return x.done(Status::Holds);
}

RuleResult rule_u_trivialplus_ic(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "trivialplus.ic");
  if (c.tau.size() != 1) return x.done(Status::Inapplicable);
  if (mod8(x, c.tau.begin()->first) == 5) return x.done(Status::Eliminates, "N = q^a with q* = 5 mod 8");
  return x.done(Status::Holds);
}

RuleResult rule_u_trivialplus_iib(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "trivialplus.iib");
  if (c.tau.size() != 2) return x.done(Status::Inapplicable);
  auto it = c.tau.begin();
  std::pair<i64, int> a = *it++, b = *it;
  for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
    Ctx y(o, "trivialplus.iib");
    if (p.second != 1 || mod8(y, p.first) != 1 || mod8(y, q.first) != 5) continue;
    i64 ps = p_star(p.first), qs = p_star(q.first);
    for (i64 place : {i64{0}, i64{2}, p.first, q.first})
      if (y.w("hilbert", {ps, qs, place}) == -1) return y.done(Status::Eliminates, "(p*, q*) nontrivial at some place");
  }
  return x.done(Status::Holds);
}

RuleResult rule_pqrthm_i(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "pqrthm.i");
  for (auto& [p, e] : c.tau)
    if (x.w("mod", {p, 4}) != 3) return x.done(Status::Inapplicable);
  if (4 > x.w("big_omega", {c.N})) return x.done(Status::Eliminates, "all primes 3 mod 4 and Omega(N) < 4");
  return x.done(Status::Holds);
}

RuleResult rule_pqrthm_ii(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "pqrthm.ii");
  if (c.tau.size() < 2) return x.done(Status::Inapplicable);
  std::vector<i64> ones;
  for (auto& [p, e] : c.tau)
    if (p % 4 == 1) ones.push_back(p);
  if (ones.size() != 1) return x.done(Status::Inapplicable);
  i64 p = ones[0];
  x.w("mod", {p, 4});
  for (auto& [q, e] : c.tau)
    if (q != p && x.w("chi", {p, q}) != -1) return x.done(Status::Inapplicable);
  if (4 > x.w("big_omega", {c.N})) return x.done(Status::Eliminates, "chi_p(q) = -1 for all other q and Omega(N) < 4");
  return x.done(Status::Holds);
}

RuleResult rule_firstpqa(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "firstpqa");
  if (c.tau.size() != 2) return x.done(Status::Inapplicable);
  auto it = c.tau.begin();
  std::pair<i64, int> a = *it++, b = *it;
  bool applied = false;
  for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
    if (p.second != 1 || q.first % 4 != 3) continue;
    applied = true;
    Ctx y(o, "firstpqa");
    y.w("exponent", {c.N, p.first});
    y.w("mod", {q.first, 4});
    i64 aq = y.w("exponent", {c.N, q.first});
    if (aq != 2) return y.done(Status::Eliminates, "N = p q^a with q = 3 mod 4 and a != 2");
    if (y.w("mod", {p.first, 4}) != 1) return y.done(Status::Eliminates, "N = p q^2 with p != 1 mod 4");
    if (y.w("chi", {p_star(p.first), q.first}) != 1) return y.done(Status::Eliminates, "N = p q^2 with chi_p(q) = -1");
  }
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

RuleResult rule_secondpq(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "secondpq");
  if (c.tau.size() != 2) return x.done(Status::Inapplicable);
  auto it = c.tau.begin();
  std::pair<i64, int> a = *it++, b = *it;
  bool applied = false;
  for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
    if (p.second != 1 || q.second != 2 || q.first % 8 != 5) continue;
    applied = true;
    Ctx y(o, "secondpq");
    y.w("exponent", {c.N, p.first});
    y.w("exponent", {c.N, q.first});
    y.w("mod", {q.first, 8});
    if (mod8(y, p.first) != 1) return y.done(Status::Eliminates, "N = p q^2 with q = 5 mod 8 and p* != 1 mod 8");
    if (y.w("chi", {p_star(p.first), q.first}) != 1) return y.done(Status::Eliminates, "N = p q^2 with chi_p(q) = -1");
  }
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

RuleResult rule_morepqr(const Candidate& c, const FieldOracle& o) {
  Ctx x(o, "morepqr");
  if (c.tau.size() != 3) return x.done(Status::Inapplicable);
  std::vector<i64> ps;
  for (auto& [p, e] : c.tau) {
    if (e != 1) return x.done(Status::Inapplicable);
    ps.push_back(p);
  }
  bool applied = false;
  std::sort(ps.begin(), ps.end());
  do {
    i64 p = ps[0], q = ps[1], r = ps[2];
    if (p % 8 != 5 || q % 8 != 3 || r % 8 != 7) continue;
    applied = true;
    Ctx y(o, "morepqr");
    y.w("mod", {p, 8});
    y.w("mod", {q, 8});
    y.w("mod", {r, 8});
    if (y.w("chi", {p_star(p), r}) == -1) return y.done(Status::Eliminates, "chi_p(r) = -1");
    if (y.w("chi", {p_star(q), p}) == -1 && y.w("chi", {p_star(q), r}) == -1)
      return y.done(Status::Eliminates, "chi_q(p) = chi_q(r) = -1");
  } while (std::next_permutation(ps.begin(), ps.end()));
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

OracleQuery d4_query(i64 d1, i64 d2, bool split) {
  OracleQuery q;
  q.kind = split ? QueryKind::D4sp : QueryKind::D4nr;
  q.d1 = d1;
  q.d2 = d2;
  return q;
}

// Shared driver for the two pmmir2 cases: every assignment (p, q, r) meeting the hypotheses whose
// congruence conclusion fails is refuted once none of the listed D4 fields exists.
RuleResult rule_pmmir2(const Candidate& c, const FieldOracle& o, bool second) {
  std::string id = second ? "pmmir2.ii" : "pmmir2.i";
  Ctx x(o, id);
  if (c.tau.size() != 3) return x.done(Status::Inapplicable);
  std::vector<i64> ps;
  for (auto& [p, e] : c.tau) ps.push_back(p);
  bool applied = false, blocked = false;
  RuleResult pending;
  do {
    i64 p = ps[0], q = ps[1], r = ps[2];
    int ep = c.tau.at(p), eq = c.tau.at(q), er = c.tau.at(r);
    i64 P = p_star(p), Q = p_star(q), R = p_star(r);
    auto m8 = [](i64 v) { return ((v % 8) + 8) % 8; };
    if (ep != 1 || eq != 1 || m8(Q) != 5 || m8(R) != 5) continue;
    std::vector<std::pair<i64, i64>> nr;
    std::pair<i64, i64> sp{0, 0};
    bool conclusion;
    if (!second) {
      if (m8(P) != 1 || er < 1 || er > 2) continue;
      conclusion = p % 8 == 1 && q % 8 == 5 && r % 8 == 5;
      nr = {{P, Q}, {P, R}};
      sp = {P, Q * R};
    } else {
      if (m8(P) != 5 || er != 2 || q > p) continue;
      conclusion = p % 8 == 5 && q % 8 == 5 && r % 8 == 5;
      nr = {{P * Q, R}, {P * R, Q}, {Q * R, P}};
    }
    applied = true;
    if (conclusion) continue;
    Ctx y(o, id);
    for (i64 v : {p, q, r}) y.w("mod", {v, 8});
    std::vector<int> none;
    for (auto [d1, d2] : nr) {
      y.w("d4r_exists", {d1, d2});
      int e = y.yes(d4_query(d1, d2, false));
      none.push_back(e < 0 ? -1 : 1 - e);
    }
    if (sp.first) {
      y.w("d4r_exists", {sp.first, sp.second});
      int e = y.yes(d4_query(sp.first, sp.second, true));
      none.push_back(e < 0 ? -1 : 1 - e);
    }
    RuleResult rr = y.conclude(none, "no D4 field exists and the congruence conclusion fails");
    if (rr.status == Status::Eliminates) return rr;
    if (rr.status == Status::Blocked && !blocked) blocked = true, pending = rr;
  } while (std::next_permutation(ps.begin(), ps.end()));
  if (blocked) return pending;
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

// ------------------------------------------------------------ exceptional rules

struct FieldCtx {
  const CubicFieldRec& f;
  std::vector<i64> T;
  i64 M;
  std::map<i64, int> m;  // factorization of M
};

FieldCtx field_ctx(const Candidate& c, const CubicFieldRec& f) {
  FieldCtx k{f, primes_of(f.conductor), c.N / f.conductor, {}};
  if (k.M > 1)
    for (auto& [p, e] : factorize(k.M).factors) k.m[p] = e;
  return k;
}

bool ramified(const CubicFieldRec& f) { return f.ramified_at_2(); }

RuleResult rule_selfdual(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "selfdual");
  OracleAnswer a = x.ask(fq(QueryKind::ResidueDeg2InF, k.f.label));
  if (a.count_is(3)) return x.done(Status::Eliminates, "2 is inert in F");
  return x.done(Status::Inapplicable);
}

RuleResult rule_trivial(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "trivial");
  if (k.f.split2 == Split2::F3) return x.done(Status::Inapplicable);
  i64 score = x.w("big_omega", {k.M}) + x.w("omega2", {k.M});
  if (score >= 2) return x.done(Status::Inapplicable, "Omega(M) + Omega_2(M) >= 2");
  OracleAnswer r = x.ask(fq(QueryKind::RE, k.f.label, k.T));
  if (!r.known()) return x.done(Status::Blocked, "delta bound needs r_E(T)");
  int delta = -1;
  std::string why;
  if (r.count_is(0)) {
    switch (k.f.split2) {
      case Split2::E3:
      case Split2::E2: delta = 0, why = "delta = 0 (r_E(T) = 0, 2 ramified)"; break;
      case Split2::F2: delta = 1, why = "delta <= 1 (r_E(T) = 0, f = 2)"; break;
      default: delta = 2, why = "delta <= 2 (r_E(T) = 0)"; break;
    }
  } else if (r.count_is(1) && (k.f.split2 == Split2::F2 || k.f.split2 == Split2::E2)) {
    int s = x.yes(fq(QueryKind::Split2InLambda, k.f.label, k.T));
    if (s < 0) return x.done(Status::Blocked, "delta bound needs the splitting of 2 in Lambda_E(T)");
    if (s == 0) delta = 1, why = "delta <= 1 (r_E(T) = 1, primes over 2 do not split in Lambda_E(T))";
  }
  if (delta < 0) return x.done(Status::Holds, "no delta bound");
  if (2 > score + delta) return x.done(Status::Eliminates, why + "; 2 > Omega(M) + Omega_2(M) + delta");
  return x.done(Status::Holds, why);
}

RuleResult rule_n_trivialplus_ic(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "trivialplus.ic");
  if (k.m.size() != 1) return x.done(Status::Inapplicable);
  i64 q = k.m.begin()->first;
  if (mod8(x, q) != 5) return x.done(Status::Inapplicable);
  int t = x.yes(fq(QueryKind::Transparent, k.f.label, merge(k.T, {q})));
  return x.conclude({t}, "M = q^a with q* = 5 mod 8 and E is q-transparent");
}

RuleResult rule_bothsplit1_i(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "bothsplit1.i");
  i64 om = x.w("big_omega", {k.M});
  if (om >= 2) return x.done(Status::Inapplicable);
  for (auto& [p, e] : k.m)
    if (x.w("mod", {p, 4}) != 3) return x.done(Status::Inapplicable);
  return x.conclude({x.yes(fq(QueryKind::Fissile, k.f.label, k.T))}, "E fissile, primes of M are 3 mod 4, 2 > Omega(M)");
}

RuleResult rule_bothsplit1_ii(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "bothsplit1.ii");
  if (k.m.size() != 1 || k.m.begin()->second != 1) return x.done(Status::Inapplicable);
  i64 p = k.m.begin()->first;
  if (x.w("mod", {p, 4}) != 1) return x.done(Status::Inapplicable);
  int fis = x.yes(fq(QueryKind::Fissile, k.f.label, k.T));
  int tr = x.yes(fq(QueryKind::Transparent, k.f.label, merge(k.T, {p})));
  return x.conclude({fis, tr}, "E fissile and p-transparent, M = p = 1 mod 4");
}

RuleResult rule_punchline(const FieldCtx& k, const FieldOracle& o, bool second) {
  Ctx x(o, second ? "punchline.ii" : "punchline.i");
  if (k.M != 1) return x.done(Status::Inapplicable);
  if (second && (ramified(k.f) || k.f.split2 == Split2::F3)) return x.done(Status::Inapplicable);
  int r = x.count_is(fq(QueryKind::REcr, k.f.label, k.T), 1);
  int flag = x.yes(fq(second ? QueryKind::RamInLambdaCr : QueryKind::MaxRealCr, k.f.label));
  return x.conclude({r, flag}, second ? "r_E^cr(T) = 1 and lambda ramifies in Lambda_E^cr(T)"
                                      : "r_E^cr(T) = 1 and F is the maximal real subfield of Lambda_E^cr(T)");
}

struct Mir1Shape {
  enum { None, A, B, C } kind = None;  // p^a | q1^a q2^b | p^a q3^b
  i64 p = 0, q1 = 0, q2 = 0;
};

Mir1Shape mir1_shape(const FieldCtx& k) {
  Mir1Shape s;
  std::vector<i64> p1, q5;
  for (auto& [p, e] : k.m) {
    i64 r = ((p_star(p) % 8) + 8) % 8;
    if (r == 1)
      p1.push_back(p);
    else if (r == 5)
      q5.push_back(p);
    else
      return s;
  }
  if (p1.size() == 1 && q5.empty()) s.kind = Mir1Shape::A, s.p = p1[0];
  if (p1.empty() && q5.size() == 2) s.kind = Mir1Shape::B, s.q1 = q5[0], s.q2 = q5[1];
  if (p1.size() == 1 && q5.size() == 1) s.kind = Mir1Shape::C, s.p = p1[0], s.q1 = q5[0];
  return s;
}

RuleResult rule_mir1(const FieldCtx& k, const FieldOracle& o, int which) {
  static const char* ids[] = {"", "mir1.i", "mir1.ii", "mir1.iii", "mir1.iv", "mir1.v"};
  Ctx x(o, ids[which]);
  if (!ramified(k.f) || k.M == 1) return x.done(Status::Inapplicable);
  Mir1Shape s = mir1_shape(k);
  bool fits = (which == 1 || which == 3) ? (s.kind == Mir1Shape::A || s.kind == Mir1Shape::B)
              : (which == 2 || which == 4) ? s.kind == Mir1Shape::C
                                           : s.kind == Mir1Shape::A && s.p % 8 == 7;
  if (!fits) return x.done(Status::Inapplicable);
  for (auto& [p, e] : k.m) mod8(x, p);
  std::vector<i64> SM = merge(k.T, primes_of(k.M));
  std::vector<int> conds{x.count_is(fq(QueryKind::RE, k.f.label, SM), 0)};
  switch (which) {
    case 1: conds.push_back(x.yes(fq(QueryKind::Fissile, k.f.label, k.T))); break;
    case 2: conds.push_back(x.yes(fq(QueryKind::Fissile, k.f.label, merge(k.T, {s.q1})))); break;
    case 3: {
      conds.push_back(x.count_is(fq(QueryKind::REcr, k.f.label, k.T), 1));
      for (i64 v : s.kind == Mir1Shape::A ? std::vector<i64>{s.p} : std::vector<i64>{s.q1, s.q2}) {
        int sp = x.yes(split_query(k.f.label, v, k.T));
        conds.push_back(sp < 0 ? -1 : 1 - sp);
      }
      break;
    }
    case 4: {
      std::vector<i64> S = merge(k.T, {s.q1});
      conds.push_back(x.count_is(fq(QueryKind::REcr, k.f.label, S), 1));
      int sp = x.yes(split_query(k.f.label, s.p, S));
      conds.push_back(sp < 0 ? -1 : 1 - sp);
      break;
    }
    case 5: conds.push_back(x.yes(fq(QueryKind::MaxRealCr, k.f.label))); break;
  }
  return x.conclude(conds, "r_E(T u primes(M)) = 0 and the mirage hypotheses hold for this shape of M");
}

RuleResult rule_mirpar(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "mirpar");
  if (k.m.size() != 2) return x.done(Status::Inapplicable);
  for (auto& [p, e] : k.m)
    if (k.f.conductor % p == 0) return x.done(Status::Inapplicable);
  auto it = k.m.begin();
  std::pair<i64, int> a = *it++, b = *it;
  bool applied = false, blocked = false;
  RuleResult pending;
  for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
    if (q.second != 1) continue;
    applied = true;
    Ctx y(o, "mirpar");
    if (mod8(y, p.first) == 1 && y.w("chi", {p_star(p.first), q.first}) == 1) continue;
    int fis = y.yes(fq(QueryKind::Fissile, k.f.label, merge(k.T, {p.first})));
    int tr = y.yes(fq(QueryKind::Transparent, k.f.label, merge(k.T, {p.first, q.first})));
    RuleResult rr = y.conclude({fis, tr}, "M = p^a q with E p-fissile and {p,q}-transparent, but p* != 1 mod 8 or chi_p*(q) = -1");
    if (rr.status == Status::Eliminates) return rr;
    if (rr.status == Status::Blocked && !blocked) blocked = true, pending = rr;
  }
  if (blocked) return pending;
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

RuleResult rule_inert_p(const FieldCtx& k, const FieldOracle& o) {
  Ctx x(o, "inert.p");
  if (k.m.size() != 1 || k.m.begin()->second != 1) return x.done(Status::Inapplicable);
  i64 p = k.m.begin()->first;
  if (k.f.conductor % p == 0) return x.done(Status::Inapplicable);
  if (x.w("mod", {p, 4}) != 3) return x.done(Status::Holds, "p = 1 mod 4");
  int in = x.yes(inert_query(k.f.label, p));
  int gs = x.yes(fq(QueryKind::GenSplit, k.f.label));
  return x.conclude({in, gs}, "M = p = 3 mod 4 with p inert in F and the generic splitting hypothesis");
}

// ------------------------------------------------------------ pairs, irreducibles, catalogs

RuleResult rule_catalog(const Candidate& c, const FieldOracle& o, const std::string& name) {
  Ctx x(o, "catalog." + name);
  OracleQuery q;
  q.kind = QueryKind::CatalogComplete;
  q.catalog = name;
  int full = x.yes(q);
  (void)c;
  return x.conclude({full}, "no " + name + " field with a suitable conductor in the complete catalog");
}

RuleResult rule_pair_base(const Candidate& c, const FieldOracle& o, i64 M) {
  Ctx x(o, "pair.base");
  if (M != 1) return x.done(Status::Inapplicable);
  OracleQuery q;
  q.kind = QueryKind::PairBase;
  q.field = c.field;
  q.field2 = c.field2;
  int y = x.yes(q);
  return x.conclude({y < 0 ? -1 : 1 - y}, "no module with constituents E1, E2 and conductor N1 N2");
}

RuleResult rule_groth_pair(const Candidate& c, const FieldOracle& o, i64 M, i64 n12) {
  Ctx x(o, "groth.inert");
  if (M == 1) return x.done(Status::Inapplicable);
  bool applied = false, blocked = false;
  RuleResult pending;
  for (auto& [p, e] : c.tau) {
    if (M % p != 0 || e != 1 || n12 % p == 0) continue;
    applied = true;
    Ctx y(o, "groth.inert");
    y.w("exponent", {c.N, p});
    RuleResult rr = y.conclude({y.yes(inert_query(c.field, p)), y.yes(inert_query(c.field2, p))},
                               "tau_p = 1 and p inert in both cubic fields");
    if (rr.status == Status::Eliminates) return rr;
    if (rr.status == Status::Blocked && !blocked) blocked = true, pending = rr;
  }
  if (blocked) return pending;
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

RuleResult rule_groth_irr(const Candidate& c, const FieldOracle& o, const IrrFieldRec& f) {
  Ctx x(o, "groth.inert");
  i64 M = c.N / f.conductor;
  if (M == 1) return x.done(Status::Inapplicable);
  bool applied = false, blocked = false;
  for (auto& [p, e] : c.tau) {
    if (M % p != 0 || e != 1 || f.conductor % p == 0) continue;
    applied = true;
    x.w("exponent", {c.N, p});
    if (!f.poly || discriminant(*f.poly) % p == 0) {
      x.need(inert_query(f.label, p));
      blocked = true;
      continue;
    }
    auto pat = factor_mod_p(*f.poly, p);
    CycleType t(pat.degrees.begin(), pat.degrees.end());
    while (std::accumulate(t.begin(), t.end(), 0) < 6) t.push_back(1);
    std::sort(t.begin(), t.end());
    F2Poly cp = charpoly_on_V(t);
    if (std::popcount(cp) % 2 == 1)
      return x.done(Status::Eliminates, "tau_p = 1 and Frobenius at p (cycle type " + cycle_type_str(t) +
                                            ") has charpoly " + f2_str(cp) + " without the factor x+1");
  }
  if (blocked) return x.done(Status::Blocked, "Frobenius datum unavailable");
  return x.done(applied ? Status::Holds : Status::Inapplicable);
}

Verdict combine(std::vector<RuleResult> trace) {
  Verdict v;
  for (auto& r : trace)
    if (r.status == Status::Eliminates) {
      v.outcome = Outcome::Eliminated;
      v.rule = r.rule;
      v.witness = r.witness;
      v.oracle = r.oracle;
      break;
    }
  if (v.outcome != Outcome::Eliminated)
    for (auto& r : trace)
      if (r.status == Status::Blocked) {
        v.outcome = Outcome::NeedsOracle;
        for (auto& q : r.missing) {
          bool dup = std::any_of(v.queries.begin(), v.queries.end(), [&](const OracleQuery& z) { return z.str() == q.str(); });
          if (!dup) v.queries.push_back(q);
        }
      }
  v.trace = std::move(trace);
  return v;
}

std::vector<i64> squarefree_divisors(const std::vector<i64>& primes) {
  std::vector<i64> out;
  size_t n = primes.size();
  for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
    i64 d = 1;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) d *= primes[i];
    out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

InfoCode tag_of(IrrType t) {
  InfoCode c;
  c.tag = t == IrrType::Q ? InfoCode::Tag::Q : t == IrrType::Wr72 ? InfoCode::Tag::Wr72 : InfoCode::Tag::S6;
  return c;
}

nlohmann::ordered_json query_json(const OracleQuery& q) { return q.str(); }

}  // namespace

// ------------------------------------------------------------ public API

std::string WitnessTerm::str() const { return fn + "(" + join(args, ", ") + ") = " + std::to_string(value); }

i64 replay_witness(const std::string& fn, const std::vector<i64>& a) {
  auto need = [&](size_t n) {
    if (a.size() != n) throw std::invalid_argument("witness " + fn + " expects " + std::to_string(n) + " arguments");
  };
  if (fn == "big_omega") return need(1), a[0] == 1 ? 0 : big_omega(a[0]);
  if (fn == "omega2") return need(1), a[0] == 1 ? 0 : omega_ell(a[0], 2);
  if (fn == "mod") return need(2), ((a[0] % a[1]) + a[1]) % a[1];
  if (fn == "p_star") return need(1), p_star(a[0]);
  if (fn == "chi") return need(2), chi(a[0], a[1]);
  if (fn == "hilbert") return need(3), hilbert(a[0], a[1], a[2] == 0 ? Place::infinite() : Place::finite(a[2]));
  if (fn == "d4r_exists") return need(2), d4r_exists(a[0], a[1]) ? 1 : 0;
  if (fn == "exponent") return need(2), valuation(a[0], a[1]);
  throw std::invalid_argument("unknown witness function " + fn);
}

std::string status_name(RuleResult::Status s) {
  switch (s) {
    case Status::Eliminates: return "eliminates";
    case Status::Holds: return "holds";
    case Status::Inapplicable: return "inapplicable";
    case Status::Blocked: return "blocked";
  }
  return "?";
}

std::string outcome_name(Verdict::Outcome o) {
  switch (o) {
    case Outcome::Eliminated: return "Eliminated";
    case Outcome::Survives: return "Survives";
    case Outcome::NeedsOracle: return "NeedsOracle";
  }
  return "?";
}

std::string Candidate::str() const {
  std::string s = structure.str();
  if (!field.empty()) s += " [" + field + (field2.empty() ? "" : " x " + field2) + "]";
  return s;
}

bool structure_less(const InfoCode& a, const InfoCode& b) {
  if (a.tag != b.tag) return static_cast<int>(a.tag) < static_cast<int>(b.tag);
  if (a.conductors != b.conductors) return a.conductors < b.conductors;
  return a.group < b.group;
}

std::vector<Candidate> enumerate_candidates(i64 N, const FieldOracle& oracle) {
  if (N < 3 || N >= 1000000) throw std::invalid_argument("N must satisfy 3 <= N < 10^6");
  if (N % 2 == 0) throw std::invalid_argument("N must be odd");
  Factorization f = factorize(N);
  if (f.is_square()) throw std::invalid_argument("N must not be a square");
  std::map<i64, int> tau(f.factors.begin(), f.factors.end());
  std::vector<Candidate> out;
  auto add = [&](InfoCode s, std::string f1 = {}, std::string f2 = {}) {
    out.push_back(Candidate{N, std::move(s), std::move(f1), std::move(f2), tau});
  };
  add(InfoCode{});
  auto divs = squarefree_divisors(f.primes());
  auto fields = [&](i64 d) {
    std::vector<const CubicFieldRec*> v;
    for (auto* c : oracle.cubic_fields_dividing(N))
      if (c->conductor == d) v.push_back(c);
    return v;
  };
  for (i64 d : divs) {
    InfoCode s;
    s.tag = InfoCode::Tag::N;
    s.conductors = {d};
    auto fs = fields(d);
    if (fs.empty()) add(s);
    for (auto* c : fs) add(s, c->label);
  }
  for (size_t i = 0; i < divs.size(); ++i)
    for (size_t j = i; j < divs.size(); ++j) {
      i64 d1 = divs[i], d2 = divs[j];
      if (N % (d1 * d2) != 0) continue;
      InfoCode s;
      s.tag = InfoCode::Tag::Pair;
      s.conductors = {d1, d2};
      auto f1 = fields(d1), f2 = fields(d2);
      if (f1.empty() || f2.empty()) {
        add(s);
        continue;
      }
      for (size_t a = 0; a < f1.size(); ++a)
        for (size_t b = d1 == d2 ? a : 0; b < f2.size(); ++b) add(s, f1[a]->label, f2[b]->label);
    }
  for (IrrType t : {IrrType::Q, IrrType::Wr72, IrrType::S6}) {
    bool any = false;
    for (auto* r : oracle.irreducible_fields_dividing(N))
      if (r->type == t) add(tag_of(t), r->label), any = true;
    if (!any) add(tag_of(t));
  }
  return out;
}

Verdict evaluate_candidate(const Candidate& c, const FieldOracle& o) {
  std::vector<RuleResult> t;
  t.push_back(rule_tau_bound(c, o));
  t.push_back(rule_schoof31(c, o));
  using Tag = InfoCode::Tag;
  switch (c.structure.tag) {
    case Tag::U:
      t.push_back(rule_nilpgenbd(c, o));
      t.push_back(rule_u_trivialplus_ic(c, o));
      t.push_back(rule_u_trivialplus_iib(c, o));
      t.push_back(rule_pqrthm_i(c, o));
      t.push_back(rule_pqrthm_ii(c, o));
      t.push_back(rule_firstpqa(c, o));
      t.push_back(rule_secondpq(c, o));
      t.push_back(rule_morepqr(c, o));
      t.push_back(rule_pmmir2(c, o, false));
      t.push_back(rule_pmmir2(c, o, true));
      break;
    case Tag::N: {
      const CubicFieldRec* f = c.field.empty() ? nullptr : o.cubic_field(c.field);
      if (!f) {
        t.push_back(rule_catalog(c, o, "cubic"));
        break;
      }
      FieldCtx k = field_ctx(c, *f);
      t.push_back(rule_selfdual(k, o));
      t.push_back(rule_trivial(k, o));
      t.push_back(rule_n_trivialplus_ic(k, o));
      t.push_back(rule_bothsplit1_i(k, o));
      t.push_back(rule_bothsplit1_ii(k, o));
      t.push_back(rule_punchline(k, o, false));
      t.push_back(rule_punchline(k, o, true));
      for (int i = 1; i <= 5; ++i) t.push_back(rule_mir1(k, o, i));
      t.push_back(rule_mirpar(k, o));
      t.push_back(rule_inert_p(k, o));
      break;
    }
    case Tag::Pair: {
      const CubicFieldRec* f1 = c.field.empty() ? nullptr : o.cubic_field(c.field);
      const CubicFieldRec* f2 = c.field2.empty() ? nullptr : o.cubic_field(c.field2);
      if (!f1 || !f2) {
        t.push_back(rule_catalog(c, o, "cubic"));
        break;
      }
      i64 n12 = f1->conductor * f2->conductor;
      t.push_back(rule_pair_base(c, o, c.N / n12));
      t.push_back(rule_groth_pair(c, o, c.N / n12, n12));
      break;
    }
    case Tag::Q:
    case Tag::Wr72:
    case Tag::S6: {
      const IrrFieldRec* f = nullptr;
      for (auto& r : o.irreducible_fields())
        if (r.label == c.field) f = &r;
      if (!f) {
        t.push_back(rule_catalog(c, o, c.structure.tag == Tag::Q ? "quintic" : "sextic"));
        break;
      }
      t.push_back(rule_groth_irr(c, o, *f));
      break;
    }
    case Tag::Other:
      break;
  }
  return combine(std::move(t));
}

SieveReport evaluate(i64 N, const FieldOracle& oracle) {
  SieveReport rep;
  rep.N = N;
  for (auto& c : enumerate_candidates(N, oracle)) {
    Verdict v = evaluate_candidate(c, oracle);
    auto it = std::find_if(rep.structures.begin(), rep.structures.end(),
                           [&](const StructureVerdict& s) { return s.structure == c.structure; });
    if (it == rep.structures.end()) {
      rep.structures.push_back(StructureVerdict{c.structure, Outcome::Eliminated, {}});
      it = std::prev(rep.structures.end());
    }
    it->candidates.push_back({c, std::move(v)});
  }
  bool open = false, partial = false;
  for (auto& s : rep.structures) {
    bool surv = false, need = false;
    for (auto& cv : s.candidates) {
      surv |= cv.verdict.outcome == Outcome::Survives;
      need |= cv.verdict.outcome == Outcome::NeedsOracle;
    }
    s.outcome = surv ? Outcome::Survives : need ? Outcome::NeedsOracle : Outcome::Eliminated;
    open |= surv;
    partial |= need;
  }
  std::stable_sort(rep.structures.begin(), rep.structures.end(),
                   [](const StructureVerdict& a, const StructureVerdict& b) { return structure_less(a.structure, b.structure); });
  rep.flag = partial ? SieveReport::Flag::Partial : open ? SieveReport::Flag::Open : SieveReport::Flag::RuledOut;
  return rep;
}

std::vector<InfoCode> SieveReport::survivors() const {
  std::vector<InfoCode> out;
  for (auto& s : structures)
    if (s.outcome != Outcome::Eliminated) out.push_back(s.structure);
  return out;
}

const StructureVerdict* SieveReport::find(const InfoCode& s) const {
  for (auto& v : structures)
    if (v.structure == s) return &v;
  return nullptr;
}

std::string SieveReport::flag_name() const {
  switch (flag) {
    case Flag::RuledOut: return "RULED_OUT";
    case Flag::Open: return "OPEN";
    case Flag::Partial: return "PARTIAL";
  }
  return "?";
}

std::string SieveReport::text() const {
  std::ostringstream os;
  os << "N = " << N << " = " << factorize(N).str() << "  " << flag_name() << "\n";
  for (auto& s : structures) {
    os << "  " << s.structure.str() << ": " << outcome_name(s.outcome) << "\n";
    for (auto& cv : s.candidates) {
      const Verdict& v = cv.verdict;
      os << "    " << cv.candidate.str() << ": " << outcome_name(v.outcome);
      if (v.outcome == Outcome::Eliminated) {
        os << " by " << v.rule;
        for (auto& w : v.witness) os << "; " << w.str();
        for (auto& u : v.oracle) os << "; " << u.query.str() << " = " << u.answer.str();
      } else if (v.outcome == Outcome::NeedsOracle) {
        os << " awaiting";
        for (size_t i = 0; i < v.queries.size(); ++i) os << (i ? "," : "") << " " << v.queries[i].str();
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string SieveReport::json(int indent) const {
  using J = nlohmann::ordered_json;
  J cands = J::array();
  for (auto& s : structures)
    for (auto& cv : s.candidates) {
      const Verdict& v = cv.verdict;
      J c;
      c["structure"] = cv.candidate.structure.str();
      if (!cv.candidate.field.empty()) c["field"] = cv.candidate.field;
      if (!cv.candidate.field2.empty()) c["field2"] = cv.candidate.field2;
      c["outcome"] = outcome_name(v.outcome);
      c["rule"] = v.rule.empty() ? J(nullptr) : J(v.rule);
      J wit = J::array();
      for (auto& w : v.witness) wit.push_back({{"fn", w.fn}, {"args", w.args}, {"value", w.value}});
      c["witness"] = wit;
      J orc = J::array();
      for (auto& u : v.oracle)
        orc.push_back({{"query", u.query.str()}, {"answer", u.answer.str()}, {"provenance", u.answer.provenance}});
      c["oracle"] = orc;
      J miss = J::array();
      for (auto& q : v.queries) miss.push_back(query_json(q));
      c["needs"] = miss;
      J tr = J::array();
      for (auto& r : v.trace) {
        J e{{"rule", r.rule}, {"status", status_name(r.status)}};
        if (!r.note.empty()) e["note"] = r.note;
        tr.push_back(e);
      }
      c["trace"] = tr;
      cands.push_back(c);
    }
  J structs = J::array();
  for (auto& s : structures) structs.push_back({{"structure", s.structure.str()}, {"outcome", outcome_name(s.outcome)}});
  J doc{{"n", N}, {"flag", flag_name()}, {"structures", structs}, {"candidates", cands}};
  return doc.dump(indent);
}

}  // namespace paramod
