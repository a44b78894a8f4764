#include "paramod/fieldoracle.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace paramod {

namespace {

bool squarefree_odd(i64 d) {
  if (d % 2 == 0) return false;
  i64 a = d < 0 ? -d : d;
  return factorize(a).squarefree();
}

std::vector<i64> primes_of(i64 n) {
  if (n < 0) n = -n;
  return n <= 1 ? std::vector<i64>{} : factorize(n).primes();
}

std::string join(const std::vector<i64>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

i64 parse_int(const std::string& s) {
  size_t pos = 0;
  i64 v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters in integer '" + s + "'");
  return v;
}

std::vector<i64> parse_primes(const std::string& s) {
  std::vector<i64> out;
  if (s.empty()) return out;
  for (auto& t : split(s, ',')) {
    i64 p = parse_int(t);
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("'" + t + "' is not a prime");
    out.push_back(p);
  }
  return out;
}

i64 label_conductor(const std::string& label) {
  auto dot = label.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == label.size())
    throw std::invalid_argument("field label must look like <conductor>.<index>");
  parse_int(label.substr(dot + 1));
  return parse_int(label.substr(0, dot));
}

const std::set<std::string>& known_kinds() {
  static const std::set<std::string> k{"D4nr",           "D4sp",        "rE",          "rEcr",          "Split2InLambda",
                                       "MaxRealCr",      "RamInLambdaCr", "SplitInLambdaCr", "Fissile",  "Transparent",
                                       "GenSplit",       "PairBase",    "CubicField",  "IrrField",      "CatalogComplete"};
  return k;
}

std::string canonical_key(const std::string& kind, const std::string& key) {
  if (kind == "D4nr" || kind == "D4sp") {
    auto parts = split(key, ',');
    if (parts.size() != 2) throw std::invalid_argument("expected d1,d2");
    i64 d1 = parse_int(parts[0]), d2 = parse_int(parts[1]);
    if (!squarefree_odd(d1) || !squarefree_odd(d2) || d1 == 1 || d2 == 1 || gcd(d1, d2) != 1)
      throw std::invalid_argument("d1, d2 must be odd, coprime, squarefree and different from 1");
    if (d1 > d2) std::swap(d1, d2);
    return std::to_string(d1) + "," + std::to_string(d2);
  }
  if (kind == "rE" || kind == "rEcr" || kind == "Split2InLambda" || kind == "Fissile" || kind == "Transparent") {
    auto parts = split(key, ';');
    if (parts.size() != 2) throw std::invalid_argument("expected <field>;<S>");
    i64 n = label_conductor(parts[0]);
    auto S = parse_primes(parts[1]);
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    for (i64 t : primes_of(n))
      if (!std::binary_search(S.begin(), S.end(), t)) throw std::invalid_argument("S must contain the primes of N_E");
    return parts[0] + ";" + join(S);
  }
  if (kind == "SplitInLambdaCr") {
    auto parts = split(key, ';');
    if (parts.size() != 3) throw std::invalid_argument("expected <field>;<p>;<S>");
    label_conductor(parts[0]);
    parse_primes(parts[1]);
    auto S = parse_primes(parts[2]);
    std::sort(S.begin(), S.end());
    return parts[0] + ";" + parts[1] + ";" + join(S);
  }
  if (kind == "MaxRealCr" || kind == "RamInLambdaCr" || kind == "GenSplit" || kind == "CubicField") {
    label_conductor(key);
    return key;
  }
  if (kind == "IrrField") {
    label_conductor(key);
    return key;
  }
  if (kind == "PairBase") {
    auto parts = split(key, ',');
    if (parts.size() != 2) throw std::invalid_argument("expected <field1>,<field2>");
    i64 a = label_conductor(parts[0]), b = label_conductor(parts[1]);
    if (a > b || (a == b && parts[0] > parts[1])) std::swap(parts[0], parts[1]);
    return parts[0] + "," + parts[1];
  }
  if (kind == "CatalogComplete") {
    if (key != "cubic" && key != "quintic" && key != "sextic") throw std::invalid_argument("catalog must be cubic, quintic or sextic");
    return key;
  }
  throw std::invalid_argument("unknown kind");
}

std::map<std::string, std::string> parse_fields(const std::string& value) {
  std::map<std::string, std::string> out;
  for (auto& part : split(value, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + part + "'");
    out[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return out;
}

OracleAnswer builtin(OracleAnswer::Value v, std::string why, int count = 0) {
  OracleAnswer a;
  a.value = v;
  a.count = count;
  a.provenance = "builtin: " + std::move(why);
  return a;
}

}  // namespace

bool d4r_exists(i64 d1, i64 d2) {
  if (!squarefree_odd(d1) || !squarefree_odd(d2)) throw std::invalid_argument("d4r_exists needs odd squarefree inputs");
  if (d1 == 1 || d2 == 1) throw std::invalid_argument("d4r_exists needs d1, d2 different from 1");
  if (gcd(d1, d2) != 1) throw std::invalid_argument("d4r_exists needs coprime inputs");
  return hilbert_nontrivial_places(d1, d2).empty();
}

std::string query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::D4nr: return "D4nr";
    case QueryKind::D4sp: return "D4sp";
    case QueryKind::QuadExtOfCubic: return "QuadExtOfCubic";
    case QueryKind::RE: return "rE";
    case QueryKind::REcr: return "rEcr";
    case QueryKind::Split2InLambda: return "Split2InLambda";
    case QueryKind::RamOf2InF: return "RamOf2InF";
    case QueryKind::ResidueDeg2InF: return "ResidueDeg2InF";
    case QueryKind::MaxRealCr: return "MaxRealCr";
    case QueryKind::RamInLambdaCr: return "RamInLambdaCr";
    case QueryKind::SplitInLambdaCr: return "SplitInLambdaCr";
    case QueryKind::Fissile: return "Fissile";
    case QueryKind::Transparent: return "Transparent";
    case QueryKind::GenSplit: return "GenSplit";
    case QueryKind::PairBase: return "PairBase";
    case QueryKind::InertInF: return "InertInF";
    case QueryKind::CatalogComplete: return "CatalogComplete";
  }
  return "?";
}

std::string OracleQuery::key() const {
  switch (kind) {
    case QueryKind::D4nr:
    case QueryKind::D4sp:
      return std::to_string(std::min(d1, d2)) + "," + std::to_string(std::max(d1, d2));
    case QueryKind::QuadExtOfCubic:
    case QueryKind::RE:
    case QueryKind::REcr:
    case QueryKind::Split2InLambda:
    case QueryKind::Fissile:
    case QueryKind::Transparent:
      return field + ";" + join(S);
    case QueryKind::SplitInLambdaCr:
      return field + ";" + std::to_string(p) + ";" + join(S);
    case QueryKind::InertInF:
      return field + ";" + std::to_string(p);
    case QueryKind::PairBase:
      return canonical_key("PairBase", field + "," + field2);
    case QueryKind::CatalogComplete:
      return catalog;
    default:
      return field;
  }
}

std::string OracleQuery::str() const {
  std::string s = query_kind_name(kind) + "(" + key();
  if (kind == QueryKind::QuadExtOfCubic) {
    s += crystalline ? "; c2|4" : "; c2=1";
    if (!conductor.odd_primes.empty()) s += "; c_p|p for p in {" + join(conductor.odd_primes) + "}";
    if (conductor.infinite_allowed) s += "; inf allowed";
    if (conductor.lambda_square_refinement) s += "; lambda^2 refinement";
  }
  return s + ")";
}

std::string OracleAnswer::str() const {
  switch (value) {
    case Value::Yes: return "Yes";
    case Value::No: return "No";
    case Value::Count: return std::to_string(count);
    case Value::Unknown: return "Unknown";
  }
  return "?";
}

std::string split2_name(Split2 s) {
  switch (s) {
    case Split2::E3: return "e3";
    case Split2::E2: return "e2";
    case Split2::F1: return "f1";
    case Split2::F2: return "f2";
    case Split2::F3: return "f3";
  }
  return "?";
}

Split2 parse_split2(const std::string& s) {
  for (Split2 v : {Split2::E3, Split2::E2, Split2::F1, Split2::F2, Split2::F3})
    if (split2_name(v) == s) return v;
  throw std::invalid_argument("unknown splitting type '" + s + "'");
}

std::string irr_type_name(IrrType t) {
  switch (t) {
    case IrrType::Q: return "q";
    case IrrType::Wr72: return "wr72";
    case IrrType::S6: return "S6";
  }
  return "?";
}

// ---------------------------------------------------------------- loading

FieldOracle FieldOracle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

FieldOracle FieldOracle::parse(const std::string& text, const std::string& source) {
  FieldOracle o;
  std::istringstream is(text);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    auto fail = [&](const std::string& why) {
      throw OracleLoadError(source + ":" + std::to_string(n) + ": " + why);
    };
    if (cols.size() != 4) fail("expected 4 tab-separated columns, got " + std::to_string(cols.size()));
    OracleRecord r{cols[0], cols[1], cols[2], cols[3], n};
    if (!known_kinds().count(r.kind)) fail("unknown record kind '" + r.kind + "'");
    if (r.provenance.empty()) fail("missing provenance");
    try {
      if (canonical_key(r.kind, r.key) != r.key) fail("non-canonical key '" + r.key + "'");
      o.add(r);
    } catch (const OracleLoadError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return o;
}

FieldOracle FieldOracle::from_records(const std::vector<OracleRecord>& records) {
  FieldOracle o;
  for (auto& r : records) {
    try {
      o.add(r);
    } catch (const std::exception& e) {
      throw OracleLoadError("record " + r.kind + " " + r.key + ": " + e.what());
    }
  }
  return o;
}

void FieldOracle::add(const OracleRecord& r) {
  std::string key = canonical_key(r.kind, r.key);
  if (index_.count({r.kind, key})) throw std::invalid_argument("duplicate record " + r.kind + " " + key);
  const std::string& v = r.value;
  if (r.kind == "rE" || r.kind == "rEcr") {
    if (parse_int(v) < 0) throw std::invalid_argument("multiplicity must be nonnegative");
  } else if (r.kind == "CubicField") {
    auto f = parse_fields(v);
    CubicFieldRec c;
    c.label = key;
    c.conductor = label_conductor(key);
    c.poly = IntPoly::parse(f.at("poly"));
    c.disc = parse_int(f.at("disc"));
    c.split2 = parse_split2(f.at("split2"));
    c.provenance = r.provenance;
    if (c.poly.degree() != 3) throw std::invalid_argument("cubic field polynomial must have degree 3");
    i64 odd = c.disc < 0 ? -c.disc : c.disc;
    while (odd % 2 == 0) odd /= 2;
    if (odd != c.conductor) throw std::invalid_argument("odd part of disc does not match the label");
    BigInt pd = discriminant(c.poly);
    if (pd % c.disc != 0 || !is_square_int(pd / c.disc).is_square)
      throw std::invalid_argument("polynomial discriminant is not disc times a square");
    cubic_.push_back(std::move(c));
  } else if (r.kind == "IrrField") {
    auto f = parse_fields(v);
    IrrFieldRec c;
    c.label = key;
    c.conductor = label_conductor(key);
    const std::string& t = f.at("type");
    if (t == "q")
      c.type = IrrType::Q;
    else if (t == "wr72")
      c.type = IrrType::Wr72;
    else if (t == "S6")
      c.type = IrrType::S6;
    else
      throw std::invalid_argument("unknown irreducible type '" + t + "'");
    if (f.count("poly")) c.poly = IntPoly::parse(f.at("poly"));
    c.provenance = r.provenance;
    irr_.push_back(std::move(c));
  } else if (v != "Yes" && v != "No") {
    throw std::invalid_argument("value must be Yes or No");
  }
  OracleRecord stored = r;
  stored.key = key;
  if (r.kind == "rE" || r.kind == "rEcr" || r.kind == "Fissile" || r.kind == "Transparent")
    by_field_[key.substr(0, key.find(';'))].push_back(records_.size());
  index_[{r.kind, key}] = records_.size();
  records_.push_back(std::move(stored));
}

const OracleRecord* FieldOracle::find(const std::string& kind, const std::string& key) const {
  auto it = index_.find({kind, key});
  return it == index_.end() ? nullptr : &records_[it->second];
}

OracleAnswer FieldOracle::lookup(const std::string& kind, const std::string& key, bool counted) const {
  OracleAnswer a;
  const OracleRecord* r = find(kind, key);
  if (!r) return a;
  a.provenance = "record " + kind + " " + key + " (line " + std::to_string(r->line) + "): " + r->provenance;
  if (counted) {
    a.value = OracleAnswer::Value::Count;
    a.count = static_cast<int>(parse_int(r->value));
  } else {
    a.value = r->value == "Yes" ? OracleAnswer::Value::Yes : OracleAnswer::Value::No;
  }
  return a;
}

std::vector<const CubicFieldRec*> FieldOracle::cubic_fields_dividing(i64 n) const {
  std::vector<const CubicFieldRec*> out;
  for (auto& c : cubic_)
    if (n % c.conductor == 0) out.push_back(&c);
  return out;
}

std::vector<const IrrFieldRec*> FieldOracle::irreducible_fields_dividing(i64 n) const {
  std::vector<const IrrFieldRec*> out;
  for (auto& c : irr_)
    if (n % c.conductor == 0) out.push_back(&c);
  return out;
}

const CubicFieldRec* FieldOracle::cubic_field(const std::string& label) const {
  for (auto& c : cubic_)
    if (c.label == label) return &c;
  return nullptr;
}

bool FieldOracle::catalog_complete(const std::string& name) const {
  const OracleRecord* r = find("CatalogComplete", name);
  return r && r->value == "Yes";
}

// ---------------------------------------------------------------- answering

OracleAnswer FieldOracle::answer(const OracleQuery& q) const {
  using V = OracleAnswer::Value;
  std::string key = q.key();
  switch (q.kind) {
    case QueryKind::D4nr:
    case QueryKind::D4sp: {
      if (!d4r_exists(q.d1, q.d2))
        return builtin(V::No, "(" + std::to_string(q.d1) + "," + std::to_string(q.d2) +
                                  ") has a nontrivial Hilbert symbol, so no D4 field exists");
      return lookup(query_kind_name(q.kind), key, false);
    }
    case QueryKind::QuadExtOfCubic:
    case QueryKind::RE:
    case QueryKind::REcr: {
      bool cr = q.kind == QueryKind::REcr || (q.kind == QueryKind::QuadExtOfCubic && q.crystalline);
      OracleAnswer a = lookup(cr ? "rEcr" : "rE", key, true);
      return a.known() ? a : zero_multiplicity(q.field, q.S, cr);
    }
    case QueryKind::Split2InLambda:
    case QueryKind::MaxRealCr:
    case QueryKind::RamInLambdaCr:
    case QueryKind::SplitInLambdaCr:
    case QueryKind::GenSplit:
    case QueryKind::PairBase:
    case QueryKind::CatalogComplete:
      return lookup(query_kind_name(q.kind), key, false);
    case QueryKind::RamOf2InF:
    case QueryKind::ResidueDeg2InF: {
      const CubicFieldRec* f = cubic_field(q.field);
      if (!f) return {};
      std::string why = "splitting type " + split2_name(f->split2) + " of " + f->label;
      if (q.kind == QueryKind::RamOf2InF) return builtin(f->ramified_at_2() ? V::Yes : V::No, why);
      switch (f->split2) {
        case Split2::E2:
        case Split2::F1: return builtin(V::Count, why, 1);
        case Split2::F2: return builtin(V::Count, why, 2);
        case Split2::F3: return builtin(V::Count, why, 3);
        case Split2::E3: return {};
      }
      return {};
    }
    case QueryKind::Fissile: {
      OracleAnswer a = lookup("Fissile", key, false);
      if (a.known()) return a;
      if (auto* r = superset("Fissile", q.field, q.S, "Yes"))
        return builtin(V::Yes, "fissility for the larger set " + r->key);
      OracleAnswer r = zero_multiplicity(q.field, q.S, true);
      if (r.count_is(0)) return builtin(V::Yes, "rEcr = 0 implies fissility [" + r.provenance + "]");
      return {};
    }
    case QueryKind::Transparent: {
      OracleAnswer a = lookup("Transparent", key, false);
      if (a.known()) return a;
      if (auto* r = superset("Transparent", q.field, q.S, "Yes"))
        return builtin(V::Yes, "transparency for the larger set " + r->key);
      const CubicFieldRec* f = cubic_field(q.field);
      OracleAnswer r = f && f->ramified_at_2() ? answer(make_field_query(QueryKind::RE, q.field, q.S)) : OracleAnswer{};
      if (r.count_is(0))
        return builtin(V::Yes, "rE = 0 with 2 ramified in F implies transparency [" + r.provenance + "]");
      return {};
    }
    case QueryKind::InertInF: {
      const CubicFieldRec* f = cubic_field(q.field);
      if (!f || q.p == 2) return {};
      if (discriminant(f->poly) % q.p == 0) return {};
      auto pat = factor_mod_p(f->poly, q.p);
      bool inert = pat.degrees.size() == 1;
      return builtin(inert ? V::Yes : V::No, "factorization pattern of " + f->poly.str() + " mod " + std::to_string(q.p));
    }
  }
  return {};
}

const OracleRecord* FieldOracle::superset(const std::string& kind, const std::string& field,
                                          const std::vector<i64>& S, const std::string& value) const {
  auto it = by_field_.find(field);
  if (it == by_field_.end()) return nullptr;
  for (size_t i : it->second) {
    const OracleRecord& r = records_[i];
    if (r.kind != kind || r.value != value) continue;
    auto T = parse_primes(r.key.substr(r.key.find(';') + 1));
    if (std::includes(T.begin(), T.end(), S.begin(), S.end())) return &r;
  }
  return nullptr;
}

// r_E and r_E^cr are monotone in S and r_E <= r_E^cr, so a zero propagates to smaller sets.
OracleAnswer FieldOracle::zero_multiplicity(const std::string& field, const std::vector<i64>& S, bool crystalline) const {
  const OracleRecord* r = superset("rEcr", field, S, "0");
  if (!r && !crystalline) r = superset("rE", field, S, "0");
  if (!r) return {};
  return builtin(OracleAnswer::Value::Count,
                 r->kind + "(" + r->key + ") = 0 bounds the multiplicity for the smaller set (line " + std::to_string(r->line) + ")");
}

OracleQuery build_query_L1(const CubicFieldRec& field, std::vector<i64> S, bool crystalline) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  auto T = primes_of(field.conductor);
  OracleQuery q;
  q.kind = QueryKind::QuadExtOfCubic;
  q.field = field.label;
  q.crystalline = crystalline;
  for (i64 t : T)
    if (!std::binary_search(S.begin(), S.end(), t)) throw std::invalid_argument("S must contain T");
  for (i64 p : S)
    if (!std::binary_search(T.begin(), T.end(), p)) q.conductor.odd_primes.push_back(p);
  q.S = std::move(S);
  q.conductor.infinite_allowed = field.disc > 0;
  q.conductor.two_exponent = crystalline ? 2 : 0;
  q.conductor.lambda_square_refinement = crystalline && field.ramified_at_2();
  return q;
}

OracleQuery make_field_query(QueryKind kind, const std::string& field, std::vector<i64> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  OracleQuery q;
  q.kind = kind;
  q.field = field;
  q.S = std::move(S);
  return q;
}

bool two_inert_predicate(const std::vector<std::pair<int, int>>& splitting_of_2_in_L1, std::pair<int, int> ef_of_F) {
  size_t primes = splitting_of_2_in_L1.size();
  if (ef_of_F.first == 2 && primes == 3) return true;
  if (ef_of_F.first == 1 && ef_of_F.second == 2 && primes == 2) return true;
  return false;
}

int h1_dimension_s3_natural() {
  // GL_2(F_2) acting on F_2^2; matrices as {a, b, c, d} for [[a, b], [c, d]].
  using M = std::array<int, 4>;
  std::vector<M> g;
  for (int m = 0; m < 16; ++m) {
    M x{m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1};
    if ((x[0] * x[3] + x[1] * x[2]) % 2) g.push_back(x);
  }
  auto act = [](const M& x, int v) {
    int v0 = v & 1, v1 = (v >> 1) & 1;
    return ((x[0] * v0 + x[1] * v1) % 2) | (((x[2] * v0 + x[3] * v1) % 2) << 1);
  };
  auto mul = [](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % 2, (x[0] * y[1] + x[1] * y[3]) % 2, (x[2] * y[0] + x[3] * y[2]) % 2,
             (x[2] * y[1] + x[3] * y[3]) % 2};
  };
  auto idx = [&](const M& x) { return static_cast<size_t>(std::find(g.begin(), g.end(), x) - g.begin()); };
  size_t n = g.size();
  long cocycles = 0;
  std::set<std::vector<int>> coboundaries;
  std::vector<int> c(n);
  long total = 1;
  for (size_t i = 0; i < n; ++i) total *= 4;
  for (long code = 0; code < total; ++code) {
    long t = code;
    for (size_t i = 0; i < n; ++i) c[i] = static_cast<int>(t % 4), t /= 4;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        if (c[idx(mul(g[i], g[j]))] != (c[i] ^ act(g[i], c[j]))) ok = false;
    if (ok) ++cocycles;
  }
  for (int v = 0; v < 4; ++v) {
    std::vector<int> b(n);
    for (size_t i = 0; i < n; ++i) b[i] = act(g[i], v) ^ v;
    coboundaries.insert(b);
  }
  long ratio = cocycles / static_cast<long>(coboundaries.size());
  int d = 0;
  while ((1L << d) < ratio) ++d;
  return d;
}

}  // namespace paramod
