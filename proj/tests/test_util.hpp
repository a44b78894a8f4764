#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "paramod/harness.hpp"
#include "paramod/polyfield.hpp"

namespace testutil {

using paramod::BigInt;
using paramod::i64;
using paramod::IntPoly;

inline std::string data(const std::string& name) { return std::string(PARAMOD_TEST_DATA_DIR) + "/" + name; }

inline const paramod::Tables& tables() {
  static const paramod::Tables t = paramod::load_tables(PARAMOD_TEST_DATA_DIR);
  return t;
}

inline const paramod::FieldOracle& bundled_oracle() {
  static const paramod::FieldOracle o = paramod::FieldOracle::load(data("oracle.tsv"));
  return o;
}

inline const paramod::Table2Row& row(const std::string& id) {
  for (auto& r : tables().table2)
    if (r.id == id) return r;
  throw std::runtime_error("no row " + id);
}

// Legendre symbol by enumerating squares mod p.
inline int legendre_brute(i64 a, i64 p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (i64 x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

inline bool prime_brute(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Fraction-free Gaussian elimination.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Res(f, g) from the Sylvester matrix.
inline BigInt sylvester_resultant(const IntPoly& f, const IntPoly& g) {
  int m = f.degree(), n = g.degree();
  size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j);
  return bareiss_det(s);
}

// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
inline BigInt sylvester_disc(const IntPoly& f) {
  int n = f.degree();
  BigInt r = sylvester_resultant(f, f.derivative());
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r / f.lc();
}

inline std::vector<std::complex<double>> numeric_roots(const IntPoly& f) {
  int n = f.degree();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  double lc = static_cast<double>(f.lc());
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -static_cast<double>(f.coeff(i)) / lc;
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(c);
  std::vector<std::complex<double>> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i));
  return r;
}

// lc^(2n-2) prod_{i<j} (a_i - a_j)^2 in floating point.
inline double numeric_disc(const IntPoly& f) {
  auto r = numeric_roots(f);
  std::complex<double> p = 1;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j) p *= (r[i] - r[j]) * (r[i] - r[j]);
  return p.real() * std::pow(static_cast<double>(f.lc()), 2 * f.degree() - 2);
}

}  // namespace testutil
