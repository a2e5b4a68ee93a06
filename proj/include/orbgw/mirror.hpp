#pragma once

#include "cyclotomic.hpp"
#include "hypergeom.hpp"
#include "special.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

inline VarsPtr tau_vars(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("tau" + std::to_string(i));
  return make_vars(names);
}

// z^0 coefficients of I = z 1_0 + tau + O(1/z)
template <class C>
std::vector<Series<C>> extract_mirror_map(const CohoSeries<C>& I) {
  Series<C> one = Series<C>::constant(I.vars(), I.truncation(), C(1));
  for (auto& [key, s] : I.entries()) {
    if (key.second > 1) throw std::domain_error("extract_mirror_map: positive z-power above 1");
    if (key.second == 1 && (key.first != 0 || s != one))
      throw std::domain_error("extract_mirror_map: z coefficient is not the unit; normalize first");
  }
  if (I.get(0, 1) != one) throw std::domain_error("extract_mirror_map: z coefficient is not the unit; normalize first");
  std::vector<Series<C>> tau;
  for (int b = 0; b < I.basis_dim(); ++b) tau.push_back(I.get(b, 0));
  return tau;
}

// compositional inverse of x -> forward(x), forward_i = x_i + (order >= 2)
template <class C>
std::vector<Series<C>> invert_series(const std::vector<Series<C>>& forward, VarsPtr target) {
  if (forward.empty()) return {};
  VarsPtr src = forward[0].vars();
  int D = forward[0].truncation();
  std::size_t m = forward.size();
  if (src->size() != m || target->size() != m) throw std::invalid_argument("invert_series: dimension mismatch");
  for (std::size_t i = 0; i < m; ++i)
    if (src->weight(i) < 1 || target->weight(i) != src->weight(i))
      throw std::invalid_argument("invert_series: variable weights must agree and be positive");
  std::vector<Series<C>> nonlin;
  for (std::size_t i = 0; i < m; ++i) {
    const Series<C>& f = forward[i];
    f.check(forward[0]);
    Series<C> rest(src, D);
    for (auto& [e, c] : f.terms()) {
      int order = 0;
      for (std::size_t j = 0; j < m; ++j) order += e[j];
      if (order == 0) throw std::domain_error("invert_series: nonzero constant term");
      if (order == 1) {
        std::size_t j = 0;
        while (!e[j]) ++j;
        if (j != i || !(c == C(1))) throw std::domain_error("invert_series: linear part is not the identity");
        continue;
      }
      rest.add_term(e, c);
    }
    Exponent ei{};
    ei[i] = 1;
    if (f.coeff(ei) != C(1)) throw std::domain_error("invert_series: linear part is not the identity");
    nonlin.push_back(rest);
  }
  std::vector<Series<C>> x;
  for (std::size_t i = 0; i < m; ++i) x.push_back(Series<C>::variable(target, D, target->name(i)));
  int minw = D + 1;
  for (std::size_t i = 0; i < m; ++i) minw = std::min(minw, src->weight(i));
  for (int k = 2 * minw; k <= D; ++k) {
    std::vector<Series<C>> xs;
    for (auto& s : x) xs.push_back(s.with_truncation(k));
    std::vector<Series<C>> next;
    for (std::size_t i = 0; i < m; ++i) {
      Series<C> t = Series<C>::variable(target, k, target->name(i));
      next.push_back((t - compose(nonlin[i].with_truncation(k), xs, target, k)));
    }
    x = std::move(next);
  }
  for (auto& s : x) s = s.with_truncation(D);
  return x;
}

// tau^r(x) for [C^2/Z_n] from the hypergeometric coefficients
inline std::vector<Series<Rational>> mirror_map_c2zn(int n, int D) {
  auto vars = x_vars(n);
  std::vector<Series<Rational>> tau(n, Series<Rational>(vars, D));
  tau[0] = Series<Rational>::variable(vars, D, "x0");
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      Rational a(0), b(0);
      for (int j = 1; j < n; ++j) {
        a += make_rational(static_cast<long>(n - j) * k[j], n);
        b += make_rational(static_cast<long>(j) * k[j], n);
      }
      Rational fb = frac(b);
      if (fb == 0) return;
      int r = static_cast<int>(floor_long(fb * n));
      Rational c = multinomial_weight(k) * gamma_ratio(frac(a), static_cast<int>(floor_long(a))) *
                   gamma_ratio(fb, static_cast<int>(floor_long(b)));
      tau[r].add_term(to_exponent(k), c);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[i] = e;
      rec(i + 1, left - e);
    }
    k[i] = 0;
  };
  rec(1, D);
  return tau;
}

// tau^1 on the locus x0 = x2 = 0 of [C^3/Z_3], as a one-variable series
inline Series<Rational> mirror_map_c3z3(int D) {
  auto v = make_vars({"x1"});
  Series<Rational> s(v, D);
  for (int k = 0; 3 * k + 1 <= D; ++k) {
    Exponent e{};
    e[0] = static_cast<std::uint8_t>(3 * k + 1);
    s.add_term(e, pow(gamma_ratio(make_rational(1, 3), k), 3) / factorial(3 * k + 1));
  }
  return s;
}

// x_i(tau) = (-1)^{n-i} e_{n-i}(kappa), power sums of kappa_k built in Q(zeta), zeta = exp(pi i/n)
inline std::vector<Series<Rational>> closed_form_inverse_an(int n, int D) {
  if (n < 2) throw std::invalid_argument("closed_form_inverse_an: n must be at least 2");
  auto tv = tau_vars(n);
  int M = 2 * n;
  using SC = Series<Cyc>;
  // p_m = sum_k kappa_k^m
  std::vector<SC> p(n + 1, SC(tv, D));
  std::vector<int> a(n, 0);
  for (int m = 1; m <= n; ++m) {
    Rational mn = make_rational(m, n);
    std::function<void(int, int)> rec = [&](int r, int left) {
      if (r == n) {
        int tot = 0;
        long wsum = m;
        for (int j = 1; j < n; ++j) {
          tot += a[j];
          wsum += static_cast<long>(j) * a[j];
        }
        Cyc s(0);
        for (int kk = 0; kk < n; ++kk) s += Cyc::zeta_pow(M, (2L * kk + 1) * wsum);
        if (s.is_zero()) return;
        p[m].add_term(to_exponent(a), s * (pow(mn, tot) * multinomial_weight(a)));
        return;
      }
      for (int e = 0; e <= left; ++e) {
        a[r] = e;
        rec(r + 1, left - e);
      }
      a[r] = 0;
    };
    rec(1, D);
  }
  // Newton: j e_j = sum_{i=1}^j (-1)^{i-1} e_{j-i} p_i
  std::vector<SC> e(n + 1, SC(tv, D));
  e[0] = SC::constant(tv, D, Cyc(1));
  for (int j = 1; j <= n; ++j) {
    SC acc(tv, D);
    for (int i = 1; i <= j; ++i) {
      SC t = e[j - i] * p[i];
      if (i % 2 == 0) t = -t;
      acc += t;
    }
    e[j] = acc.scaled(Cyc(make_rational(1, j)));
  }
  std::vector<Series<Rational>> x(n, Series<Rational>(tv, D));
  x[0] = Series<Rational>::variable(tv, D, "tau0");
  for (int i = 1; i < n; ++i) {
    SC s = e[n - i];
    if ((n - i) % 2) s = -s;
    x[i] = s.map_coeffs([](const Cyc& c) { return c.to_rational(); });
  }
  // constant coefficient (-1)^n e_n must be 1
  Cyc prod = e[n].constant_term();
  if (prod != Cyc(n % 2 ? -1 : 1)) throw std::domain_error("closed_form_inverse_an: constant coefficient is not 1");
  return x;
}

// multiply by e^{-a/z}
template <class C>
CohoSeries<C> string_shift(const CohoSeries<C>& J, const Series<C>& a) {
  if (a.is_zero()) return J;
  return J.times(exp_over_z(-a, J.window().zMin));
}

template <class C>
struct Normalized {
  CohoSeries<C> J;
  std::vector<Series<C>> tau;
};

// J = I/F, tau = G/F for I = F z 1_0 + G + O(1/z)
template <class C>
Normalized<C> lefschetz_normalize(const CohoSeries<C>& I) {
  for (auto& [key, s] : I.entries()) {
    if (key.second > 1) throw std::domain_error("lefschetz_normalize: positive z-power above 1");
    if (key.second == 1 && key.first != 0) throw std::domain_error("lefschetz_normalize: z coefficient off the unit");
  }
  Series<C> F = I.get(0, 1);
  if (!(F.constant_term() == C(1))) throw std::domain_error("lefschetz_normalize: F constant term is not 1");
  Normalized<C> out;
  Series<C> one = Series<C>::constant(I.vars(), I.truncation(), C(1));
  if (F == one) {
    out.J = I;
  } else {
    out.J = I.times(inv(F));
  }
  for (int b = 0; b < I.basis_dim(); ++b) out.tau.push_back(out.J.get(b, 0));
  return out;
}

}  // namespace orbgw
