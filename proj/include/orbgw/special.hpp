#pragma once

#include "coho.hpp"

#include <string>
#include <vector>

namespace orbgw {

// Gamma(1-frac)/Gamma(1-frac-whole) as a finite product
inline Rational gamma_ratio(const Rational& frac, int whole) {
  if (frac < 0 || frac >= 1) throw std::domain_error("gamma_ratio: fractional part outside [0,1)");
  if (whole < 0) throw std::domain_error("gamma_ratio: negative integer part");
  Rational r(1);
  for (int j = 0; j < whole; ++j) r *= -frac - j;
  return r;
}

// coefficients of B_m(x), lowest degree first, from z e^{zx}/(e^z-1)
inline std::vector<Rational> bernoulli_poly(int m) {
  if (m < 0) throw std::domain_error("bernoulli_poly: negative index");
  auto vars = make_vars({"x", "z"}, {0, 1});
  using S = Series<Rational>;
  S zx(vars, m);
  Exponent e{};
  e[0] = 1;
  e[1] = 1;
  zx.add_term(e, 1);
  S denom(vars, m);
  for (int k = 0; k <= m; ++k) {
    Exponent ek{};
    ek[1] = static_cast<std::uint8_t>(k);
    denom.add_term(ek, Rational(1) / factorial(k + 1));
  }
  S gen = exp(zx) * inv(denom);
  std::vector<Rational> out(m + 1);
  Rational mf = factorial(m);
  for (auto& [ex, c] : gen.terms())
    if (ex[1] == m) out[ex[0]] = c * mf;
  return out;
}

inline Rational eval_poly(const std::vector<Rational>& p, const Rational& x) {
  Rational r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// variables {x, s0..s_smax} with v(s_k) = k+1
inline VarsPtr g_function_vars(const std::string& x_var, int smax) {
  std::vector<std::string> names{x_var};
  std::vector<int> w{1};
  for (int k = 0; k <= smax; ++k) {
    names.push_back("s" + std::to_string(k));
    w.push_back(k + 1);
  }
  return make_vars(names, w);
}

inline int g_function_exact_degree(int smax) { return 2 * (smax + 1); }

// G_y(x,z) = sum s_{l+m-1} B_m(y)/m! x^l/l! z^{m-1}, z window [-1, smax]
inline CohoSeries<Rational> g_function(const Rational& y, const std::string& x_var, int smax, int D) {
  if (smax < 0 || smax + 2 > kMaxVars) throw std::domain_error("g_function: smax out of range");
  auto vars = g_function_vars(x_var, smax);
  CohoSeries<Rational> G(1, ZWindow{-1, smax}, vars, D);
  for (int k = 0; k <= smax; ++k)
    for (int m = 0; m <= k + 1; ++m) {
      int l = k + 1 - m;
      Rational c = eval_poly(bernoulli_poly(m), y) / (factorial(m) * factorial(l));
      if (c == 0) continue;
      Exponent e{};
      e[0] = static_cast<std::uint8_t>(l);
      e[1 + k] = 1;
      G.add_term(0, m - 1, e, c);
    }
  return G;
}

// x -> x + c z, variable 0 is x
inline CohoSeries<Rational> shift_x(const CohoSeries<Rational>& G, const Rational& c) {
  CohoSeries<Rational> r(G.basis_dim(), G.window(), G.vars(), G.truncation());
  for (auto& [key, s] : G.entries())
    for (auto& [e, a] : s.terms()) {
      int l = e[0];
      for (int j = 0; j <= l; ++j) {
        Exponent f = e;
        f[0] = static_cast<std::uint8_t>(l - j);
        r.add_term(key.first, key.second + j, f, a * binomial(l, j) * pow(c, j));
      }
    }
  return r;
}

// s(x) = sum_k s_k x^k / k!
inline CohoSeries<Rational> s_of_x(const CohoSeries<Rational>& like, int smax) {
  CohoSeries<Rational> r(like.basis_dim(), like.window(), like.vars(), like.truncation());
  for (int k = 0; k <= smax; ++k) {
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(k);
    e[1 + k] = 1;
    r.add_term(0, 0, e, Rational(1) / factorial(k));
  }
  return r;
}

}  // namespace orbgw
