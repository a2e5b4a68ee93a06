#pragma once

#include "mirror.hpp"
#include "quintic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

struct Insertion {
  int basis = 0;
  int psi = 0;
  bool operator==(const Insertion&) const = default;
};

struct Correlator {
  std::string model;
  std::vector<Insertion> insertions;
  Rational degree;
  RatFunc value;
};

inline std::string correlator_label(const Correlator& c) {
  std::string s = "<";
  for (std::size_t i = 0; i < c.insertions.size(); ++i) {
    if (i) s += ", ";
    s += "phi" + std::to_string(c.insertions[i].basis);
    if (c.insertions[i].psi) s += " psi^" + std::to_string(c.insertions[i].psi);
  }
  return s + ">_{0," + std::to_string(c.insertions.size()) + "," + to_string(c.degree) + "}";
}

// multiply by e^{s t phi_div / z} using the ring table; t is variable 0
inline CohoSeries<RatFunc> times_exp_divisor(const CohoSeries<RatFunc>& C, const OrbifoldModel& m, int div, int sign) {
  if (!m.ring) throw std::invalid_argument("model '" + m.name + "' has no ring table");
  const auto& ring = *m.ring;
  int zMin = C.window().zMin;
  CohoSeries<RatFunc> cur = C, out = C;
  for (int k = 1; !cur.is_zero(); ++k) {
    CohoSeries<RatFunc> next(C.basis_dim(), C.window(), C.vars(), C.truncation());
    for (auto& [key, s] : cur.entries()) {
      if (key.second - 1 < zMin) continue;
      Series<RatFunc> ts(s.vars(), s.truncation());
      for (auto& [e, c] : s.terms()) {
        if (e[0] == 255) throw std::overflow_error("t exponent overflow");
        Exponent f = e;
        ++f[0];
        ts.add_term(f, c * RatFunc(make_rational(sign, k)));
      }
      for (int b = 0; b < m.N; ++b) {
        const Rational& r = ring[div][key.first][b];
        if (r != 0) next.add(b, key.second - 1, ts.scaled(RatFunc(r)));
      }
    }
    out += next;
    cur = std::move(next);
  }
  return out;
}

// e^{-a/z} I with a the degree-positive 1_0 part of the z^0 coefficient
inline CohoSeries<RatFunc> quintic_j_function(int D, std::optional<ZWindow> window = {}) {
  auto I = quintic_i_function(D, window);
  auto B = quintic_times_exp_tp(I, -1);
  Series<RatFunc> a = B.get(0, 0);
  for (auto& [e, c] : a.terms())
    if (e[0]) throw std::domain_error("quintic_j_function: t-dependent shift");
  auto J = string_shift(I, a);
  auto tau = extract_mirror_map(J);
  Series<RatFunc> tp = Series<RatFunc>::variable(J.vars(), D, "t");
  for (int b = 0; b < 6; ++b)
    if (tau[b] != (b == 1 ? tp : Series<RatFunc>(J.vars(), D)))
      throw std::domain_error("quintic_j_function: z^0 part is not t p");
  return J;
}

// <phi_e psi^k>_{0,1,d} from J = z e^{t phi_div/z}(1_0 + sum_d Q^d <phi_e/(z(z-psi))> phi^e)
inline std::vector<Correlator> extract_one_point(const CohoSeries<RatFunc>& J, const OrbifoldModel& m, int div = 1) {
  if (J.basis_dim() != m.N) throw std::invalid_argument("extract_one_point: basis dimension mismatch");
  auto B = times_exp_divisor(J, m, div, -1);
  std::map<std::pair<Exponent, int>, std::vector<RatFunc>> groups;
  for (auto& [key, s] : B.entries()) {
    if (key.second >= 0) continue;
    for (auto& [e, c] : s.terms()) {
      if (e[0]) throw std::domain_error("extract_one_point: bracket depends on t");
      auto& v = groups.try_emplace({e, key.second}, m.N, RatFunc(0)).first->second;
      v[key.first] += c;
    }
  }
  std::vector<Correlator> out;
  for (auto& [g, v] : groups) {
    int qpow = 0;
    for (std::size_t i = 1; i < J.vars()->size(); ++i) qpow += g.first[i] * J.vars()->weight(i);
    for (int eps = 0; eps < m.N; ++eps) {
      RatFunc val(0);
      for (int b = 0; b < m.N; ++b)
        if (!m.pairing[eps][b].is_zero() && !v[b].is_zero()) val += m.pairing[eps][b] * v[b];
      if (val.is_zero()) continue;
      out.push_back({m.name, {{eps, -g.second - 1}}, Rational(qpow) / m.degreeScale, val});
    }
  }
  std::sort(out.begin(), out.end(), [](const Correlator& a, const Correlator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.insertions[0].psi != b.insertions[0].psi) return a.insertions[0].psi < b.insertions[0].psi;
    return a.insertions[0].basis < b.insertions[0].basis;
  });
  return out;
}

inline std::vector<Correlator> quintic_invariants(int dmax) {
  if (dmax < 0) throw std::invalid_argument("quintic_invariants: dmax must be non-negative");
  if (dmax == 0) return {};
  return extract_one_point(quintic_j_function(2 * dmax), model_quintic_ambient());
}

inline Correlator non_equivariant_limit(const Correlator& c, const OrbifoldModel& m) {
  if (m.twist != Twist::EulerClass)
    throw std::domain_error("non-equivariant limit requires an Euler-class twist");
  Correlator r = c;
  r.value = RatFunc(c.value.eval_zero());
  return r;
}

enum class Route { A, B };

// dG/dtau^r as a series in x_1..x_{n-1}, r = 1..n-1
inline Series<Rational> dg_c2zn(int n, int r, int D) {
  auto vars = x_vars(n);
  Series<Rational> s(vars, D);
  Rational target = make_rational(n - r, n);
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      Rational a(0), b(0);
      for (int j = 1; j < n; ++j) {
        a += make_rational(static_cast<long>(n - j) * k[j], n);
        b += make_rational(static_cast<long>(j) * k[j], n);
      }
      if (frac(b) != target) return;
      Rational fa = frac(a);
      long fl = floor_long(a);
      if (fl == 0) return;
      Rational h(0);
      for (long mm = 0; mm < fl; ++mm) h += 1 / (mm + fa);
      Rational c = multinomial_weight(k) / n * h * gamma_ratio(fa, static_cast<int>(fl)) *
                   gamma_ratio(frac(b), static_cast<int>(floor_long(b)));
      s.add_term(to_exponent(k), c);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[i] = e;
      rec(i + 1, left - e);
    }
    k[i] = 0;
  };
  rec(1, D);
  return s;
}

// gradient of F_0 for [C^2/Z_n] in the flat coordinates tau^0..tau^{n-1}
inline std::vector<Series<RatFunc>> potential_derivatives_c2zn(int n, int D, Route route,
                                                             const std::vector<Series<Rational>>* inverse = nullptr) {
  auto tv = tau_vars(n);
  std::vector<Series<Rational>> x = inverse ? *inverse : closed_form_inverse_an(n, D);
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("inverse mirror map has wrong size");
  std::vector<Series<RatFunc>> grad;
  if (route == Route::B) {
    auto m = model_c2_zn(n);
    IOptions o;
    o.window = ZWindow{-1, 1};
    auto I = i_twisted(m, D, o);
    std::vector<Series<RatFunc>> c;
    for (int b = 0; b < n; ++b) c.push_back(compose_split(I.get(b, -1), x, tv, D));
    for (int r = 0; r < n; ++r) {
      Series<RatFunc> g(tv, D);
      for (int b = 0; b < n; ++b)
        if (!m.pairing[r][b].is_zero()) g += c[b].scaled(m.pairing[r][b]);
      grad.push_back(g);
    }
    return grad;
  }
  RatFunc l1 = RatFunc::lambda(1), l2 = RatFunc::lambda(2);
  std::vector<Series<RatFunc>> t;
  for (int r = 0; r < n; ++r) t.push_back(Series<RatFunc>::variable(tv, D, tv->name(r)));
  std::vector<Series<Rational>> sx(n, x[0]);
  for (int i = 1; i < n; ++i) sx[i] = x[n - i];
  RatFunc inv_n = RatFunc(make_rational(1, n));
  Series<RatFunc> g0 = (t[0] * t[0]).scaled(RatFunc(make_rational(1, 2 * n)) / (l1 * l2));
  for (int i = 1; i < n; ++i) g0 += (t[i] * t[n - i]).scaled(RatFunc(make_rational(1, 2 * n)));
  grad.push_back(g0);
  for (int r = 1; r < n; ++r) {
    Series<RatFunc> g = (t[0] * t[n - r]).scaled(inv_n);
    Series<RatFunc> d1 = to_ratfunc_series(compose(dg_c2zn(n, r, D), x, tv, D));
    Series<RatFunc> d2 = to_ratfunc_series(compose(dg_c2zn(n, n - r, D), sx, tv, D));
    g -= d1.scaled(l1);
    g -= d2.scaled(l2);
    grad.push_back(g);
  }
  return grad;
}

// dF/dtau^1 on x_2 = 0 for [C^3/Z_3], as a series in x_1
inline Series<Rational> c3z3_df1_x(int D) {
  auto v = make_vars({"x1"});
  Series<Rational> s(v, D);
  for (int j = 0; 3 * j + 2 <= D; ++j) {
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(3 * j + 2);
    s.add_term(e, pow(gamma_ratio(make_rational(2, 3), j), 3) / (3 * factorial(3 * j + 2)));
  }
  return s;
}

// 3 dF/dtau^2 on x_2 = 0 minus tau^0 tau^1: -sum_j x1^{3j+1}/(3j+1)! (Gamma(j+1/3)/Gamma(1/3))^3 (-1)^{3j} sum_{r<j} (l1+l2+l3)/(r+1/3)
inline Series<RatFunc> c3z3_df2_lambda_part(int D) {
  auto v = make_vars({"x1"});
  Series<RatFunc> s(v, D);
  RatFunc lsum = RatFunc::lambda(1) + RatFunc::lambda(2) + RatFunc::lambda(3);
  for (int j = 1; 3 * j + 1 <= D; ++j) {
    Rational h(0);
    for (int r = 0; r < j; ++r) h += 1 / (r + make_rational(1, 3));
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(3 * j + 1);
    Rational c = -pow(gamma_ratio(make_rational(1, 3), j), 3) * h / factorial(3 * j + 1);
    s.add_term(e, lsum * RatFunc(c));
  }
  return s;
}

// N_{0,k} = <1_{1/3}, ..., 1_{1/3}>_{0,3k,0}, k = 1..kmax
inline std::vector<Rational> invariants_c3z3(int kmax, int D = 0) {
  if (kmax < 1) throw std::invalid_argument("invariants_c3z3: kmax must be positive");
  if (D == 0) D = 3 * kmax;
  if (D < 3 * kmax - 1) throw std::invalid_argument("invariants_c3z3: truncation too small, need D >= 3 kmax - 1");
  auto tv = make_vars({"tau1"});
  auto x = invert_series(std::vector<Series<Rational>>{mirror_map_c3z3(D)}, tv);
  auto f = compose(c3z3_df1_x(D), x, tv, D);
  std::vector<Rational> N;
  for (int k = 1; k <= kmax; ++k) {
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(3 * k - 1);
    N.push_back(f.coeff(e) * factorial(3 * k - 1));
  }
  return N;
}

}  // namespace orbgw
