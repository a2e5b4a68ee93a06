#pragma once

#include "ratfunc.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

enum class Twist { EulerClass, InverseEulerClass, Untwisted };

inline std::string twist_name(Twist t) {
  switch (t) {
    case Twist::EulerClass: return "euler";
    case Twist::InverseEulerClass: return "inverseEuler";
    case Twist::Untwisted: return "untwisted";
  }
  return "untwisted";
}

inline Twist parse_twist(const std::string& s) {
  if (s == "euler") return Twist::EulerClass;
  if (s == "inverseEuler") return Twist::InverseEulerClass;
  if (s == "untwisted") return Twist::Untwisted;
  throw std::invalid_argument("unknown twist '" + s + "'");
}

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Gauss-Jordan over any field type with zero test
template <class T>
Matrix<T> invert_matrix(Matrix<T> a) {
  std::size_t n = a.size();
  Matrix<T> inv(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("matrix is not square");
    inv[i][i] = T(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == T(0)) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    T s = T(1) / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * s;
      inv[c][j] = inv[c][j] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == T(0)) continue;
      T f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

template <class T>
T determinant(Matrix<T> a) {
  std::size_t n = a.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == T(0)) ++p;
    if (p == n) return T(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    T s = T(1) / a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == T(0)) continue;
      T f = a[r][c] * s;
      for (std::size_t j = c; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return det;
}

struct OrbifoldModel {
  std::string name;
  int N = 0;
  std::vector<int> component;  // inertia component of each basis class
  std::vector<Rational> ages;
  std::vector<int> involution;
  int r = 0;
  Matrix<Rational> fWeights;      // N x r
  Matrix<Rational> chernDegrees;  // r x novikovRank: <rho_j, d> = sum_a chernDegrees[j][a] d_a
  Matrix<Rational> chernClasses;  // r x N: rho_j in the basis
  int novikovRank = 0;
  Rational degreeScale = 1;  // series degree per unit Novikov degree
  Twist twist = Twist::Untwisted;
  Matrix<RatFunc> pairing;
  std::optional<std::vector<Matrix<Rational>>> ring;  // ring[i][j][k]: phi_i phi_j = sum_k . phi_k
  int cyclicOrder = 0;        // n for quotients [C^r/Z_n], else 0
  std::vector<int> weights;   // representation weights for cyclic models

  int bundle_rank() const { return r; }
  bool operator==(const OrbifoldModel&) const = default;
};

inline RatFunc lambda_power(int j, Twist t) {
  switch (t) {
    case Twist::EulerClass: return RatFunc::lambda(j);
    case Twist::InverseEulerClass: return RatFunc(1) / RatFunc::lambda(j);
    case Twist::Untwisted: return RatFunc(1);
  }
  return RatFunc(1);
}

// [C^r/Z_n] with weights w: f_i^{(j)} = <i w_j / n>, delta_i paired with delta_{n-i}
inline OrbifoldModel model_cyclic(const std::string& name, int n, const std::vector<int>& w, Twist twist) {
  if (n < 2) throw std::invalid_argument("cyclic order must be at least 2");
  if (w.empty() || w.size() > static_cast<std::size_t>(kMaxLambda))
    throw std::invalid_argument("bundle rank must be between 1 and 8");
  OrbifoldModel m;
  m.name = name;
  m.N = n;
  m.r = static_cast<int>(w.size());
  m.cyclicOrder = n;
  m.weights = w;
  m.twist = twist;
  m.chernDegrees.assign(m.r, {});
  m.chernClasses.assign(m.r, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    m.component.push_back(i);
    m.involution.push_back((n - i) % n);
    std::vector<Rational> row;
    Rational age(0);
    for (int wj : w) {
      Rational f = frac(make_rational(static_cast<long>(i) * wj, n));
      row.push_back(f);
      age += f;
    }
    m.fWeights.push_back(row);
    m.ages.push_back(age);
  }
  m.pairing.assign(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (int i = 0; i < n; ++i) {
    RatFunc v = RatFunc(make_rational(1, n));
    for (int j = 0; j < m.r; ++j)
      if (m.fWeights[i][j] == 0) v *= lambda_power(j + 1, twist);
    m.pairing[i][m.involution[i]] = v;
  }
  return m;
}

inline OrbifoldModel model_c2_zn(int n) {
  if (n < 2) throw std::invalid_argument("model_c2_zn: n must be at least 2");
  return model_cyclic("c2z" + std::to_string(n), n, {n - 1, 1}, Twist::InverseEulerClass);
}

inline OrbifoldModel model_c3_z3() { return model_cyclic("c3z3", 3, {1, 1, 1}, Twist::InverseEulerClass); }

// P(1,1,1,1,2) twisted by e(O(5)); basis 1, p, p^2, p^3, p^4, 1_{1/2}
inline OrbifoldModel model_quintic_ambient() {
  OrbifoldModel m;
  m.name = "quintic";
  m.N = 6;
  m.component = {0, 0, 0, 0, 0, 1};
  m.ages = {0, 0, 0, 0, 0, 2};
  m.involution = {0, 1, 2, 3, 4, 5};
  m.r = 1;
  m.fWeights = {{0}, {0}, {0}, {0}, {0}, {make_rational(1, 2)}};
  m.chernDegrees = {{5}};
  m.chernClasses = {{0, 5, 0, 0, 0, 0}};
  m.novikovRank = 1;
  m.degreeScale = 2;
  m.twist = Twist::EulerClass;
  RatFunc l1 = RatFunc::lambda(1);
  m.pairing.assign(6, std::vector<RatFunc>(6, RatFunc(0)));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i + j == 4) m.pairing[i][j] = l1 * RatFunc(make_rational(1, 2));
      if (i + j == 3) m.pairing[i][j] = RatFunc(make_rational(5, 2));
    }
  m.pairing[5][5] = RatFunc(make_rational(1, 2));
  std::vector<Matrix<Rational>> ring(6, Matrix<Rational>(6, std::vector<Rational>(6, Rational(0))));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i + j <= 4) ring[i][j][i + j] = 1;
  ring[0][5][5] = 1;
  ring[5][0][5] = 1;
  ring[5][5][4] = 1;
  m.ring = ring;
  return m;
}

inline void validate_model(const OrbifoldModel& m) {
  auto fail = [&](const std::string& what) { throw std::invalid_argument("model '" + m.name + "': " + what); };
  if (m.N < 1) fail("inertia count must be positive");
  auto sz = static_cast<std::size_t>(m.N);
  if (m.ages.size() != sz) fail("ages has wrong length");
  if (m.involution.size() != sz) fail("involution has wrong length");
  if (m.component.size() != sz) fail("component map has wrong length");
  if (m.fWeights.size() != sz) fail("fWeights has wrong row count");
  if (m.r < 0 || m.r > kMaxLambda) fail("bundle rank out of range");
  for (auto& a : m.ages)
    if (a < 0) fail("negative age");
  for (int i = 0; i < m.N; ++i) {
    int j = m.involution[i];
    if (j < 0 || j >= m.N) fail("involution index out of range");
    if (m.involution[j] != i) fail("involution is not an involution");
  }
  for (int i = 0; i < m.N; ++i) {
    if (m.fWeights[i].size() != static_cast<std::size_t>(m.r)) fail("fWeights row has wrong length");
    for (auto& f : m.fWeights[i])
      if (f < 0 || f >= 1) fail("fWeights entry outside [0,1)");
  }
  for (int i = 0; i < m.N; ++i)
    for (int j = 0; j < m.r; ++j) {
      const Rational& f = m.fWeights[i][j];
      const Rational& g = m.fWeights[m.involution[i]][j];
      if (g != (f == 0 ? Rational(0) : 1 - f)) fail("fWeights incompatible with the involution");
    }
  if (m.chernDegrees.size() != static_cast<std::size_t>(m.r)) fail("chernDegrees has wrong row count");
  for (auto& row : m.chernDegrees)
    if (row.size() != static_cast<std::size_t>(m.novikovRank)) fail("chernDegrees row has wrong length");
  if (!m.chernClasses.empty()) {
    if (m.chernClasses.size() != static_cast<std::size_t>(m.r)) fail("chernClasses has wrong row count");
    for (auto& row : m.chernClasses)
      if (row.size() != sz) fail("chernClasses row has wrong length");
  }
  if (m.cyclicOrder) {
    if (m.N != m.cyclicOrder) fail("cyclic model must have one class per group element");
    for (int i = 0; i < m.N; ++i) {
      Rational s(0);
      int nonzero = 0;
      for (auto& f : m.fWeights[i]) {
        s += f;
        nonzero += f != 0;
      }
      if (s != m.ages[i]) fail("age differs from the sum of fWeights");
      if (m.ages[i] + m.ages[m.involution[i]] != nonzero) fail("ages inconsistent with the involution");
    }
  }
  if (m.pairing.size() != sz) fail("pairing has wrong row count");
  for (auto& row : m.pairing)
    if (row.size() != sz) fail("pairing row has wrong length");
  for (int i = 0; i < m.N; ++i)
    for (int j = 0; j < m.N; ++j) {
      if (m.pairing[i][j] != m.pairing[j][i]) fail("pairing is not symmetric");
      if (!m.pairing[i][j].is_zero() && m.component[j] != m.component[m.involution[i]])
        fail("pairing couples components not related by the involution");
    }
  try {
    invert_matrix(m.pairing);
  } catch (const std::domain_error&) {
    fail("pairing is not invertible");
  }
  if (m.ring) {
    auto& t = *m.ring;
    if (t.size() != sz) fail("ring table has wrong size");
    for (auto& a : t) {
      if (a.size() != sz) fail("ring table has wrong size");
      for (auto& b : a)
        if (b.size() != sz) fail("ring table has wrong size");
    }
  }
}

// columns are the duals: phi^b = sum_a D[a][b] phi_a
inline Matrix<RatFunc> dual_basis(const OrbifoldModel& m) { return invert_matrix(m.pairing); }

// alpha(k): sum_i k_i f_i^{(j)} for cyclic models
inline std::vector<Rational> cyclic_alpha(const OrbifoldModel& m, const std::vector<int>& k) {
  std::vector<Rational> a(m.r, Rational(0));
  for (int i = 0; i < m.N; ++i)
    if (k[i])
      for (int j = 0; j < m.r; ++j) a[j] += k[i] * m.fWeights[i][j];
  return a;
}

}  // namespace orbgw
