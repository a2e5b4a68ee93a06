#pragma once

#include "hypergeom.hpp"

#include <map>
#include <utility>
#include <vector>

namespace orbgw {

// element of Q(l)[p]/(p^{pmax+1}) ((z^{-1})), keyed by (p power, z power)
class PZ {
 public:
  PZ(int pmax, int zMin) : pmax_(pmax), zMin_(zMin) {}

  static PZ one(int pmax, int zMin) {
    PZ r(pmax, zMin);
    r.add(0, 0, RatFunc(1));
    return r;
  }

  void add(int p, int z, const RatFunc& c) {
    if (p > pmax_ || z < zMin_ || c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace({p, z}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  const std::map<std::pair<int, int>, RatFunc>& terms() const { return t_; }
  int pmax() const { return pmax_; }
  int zmin() const { return zMin_; }

  friend PZ operator*(const PZ& a, const PZ& b) {
    PZ r(a.pmax_, a.zMin_);
    for (auto& [ka, ca] : a.t_)
      for (auto& [kb, cb] : b.t_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend bool operator==(const PZ& a, const PZ& b) { return a.t_ == b.t_; }

  // (lam + cp p + cz z)
  static PZ linear(int pmax, int zMin, const RatFunc& lam, const Rational& cp, const Rational& cz) {
    PZ r(pmax, zMin);
    r.add(0, 0, lam);
    r.add(1, 0, RatFunc(cp));
    r.add(0, 1, RatFunc(cz));
    return r;
  }

  // 1/(cp p + cz z) with cz != 0, nilpotent expansion
  static PZ inverse_linear(int pmax, int zMin, const Rational& cp, const Rational& cz) {
    PZ r(pmax, zMin);
    Rational c = Rational(1) / cz;
    for (int j = 0; j <= pmax; ++j) r.add(j, -1 - j, RatFunc(pow(-cp, j) * pow(c, j + 1)));
    return r;
  }

 private:
  int pmax_, zMin_;
  std::map<std::pair<int, int>, RatFunc> t_;
};

inline VarsPtr quintic_vars() { return make_vars({"t", "q"}, {0, 1}); }

inline int quintic_basis(int d2, int ppow) { return d2 % 2 ? 5 : ppow; }

// hypergeometric factor at Novikov degree d = d2/2
inline PZ quintic_factor(int d2, int zMin) {
  int pmax = d2 % 2 ? 0 : 4;
  Rational d = make_rational(d2, 2), fd = frac(d);
  RatFunc l1 = RatFunc::lambda(1);
  PZ A = PZ::one(pmax, zMin);
  for (Rational b = fd == 0 ? Rational(1) : fd; b <= 5 * d; b += 1) A = A * PZ::linear(pmax, zMin, l1, 5, b);
  for (Rational b = fd == 0 ? Rational(1) : fd; b <= d; b += 1) {
    PZ inv = PZ::inverse_linear(pmax, zMin, 1, b);
    A = A * inv * inv * inv * inv;
  }
  for (Rational b = 1; b <= 2 * d; b += 1) A = A * PZ::inverse_linear(pmax, zMin, 2, b);
  return A;
}

// same factor assembled from the model data: generic modification factor times the untwisted term
inline PZ quintic_factor_generic(const OrbifoldModel& m, int d2, int zMin) {
  int pmax = d2 % 2 ? 0 : 4;
  Rational d = make_rational(d2, 2);
  int out = d2 % 2 ? 5 : 0;
  Rational f = m.fWeights[out][0];
  Rational rhoDeg = m.chernDegrees[0][0] * d;
  Rational Nv = rhoDeg + f;
  if (!is_integer(Nv)) throw std::domain_error("non-integral N_theta");
  Rational rhoP = m.chernClasses[0][1];
  PZ M = PZ::one(pmax, zMin);
  for (long mm = 1; mm <= floor_long(Nv); ++mm) M = M * PZ::linear(pmax, zMin, RatFunc::lambda(1), rhoP, mm - f);
  Rational fd = frac(d);
  for (Rational b = fd == 0 ? Rational(1) : fd; b <= d; b += 1) {
    PZ inv = PZ::inverse_linear(pmax, zMin, 1, b);
    M = M * inv * inv * inv * inv;
  }
  for (Rational b = 1; b <= 2 * d; b += 1) M = M * PZ::inverse_linear(pmax, zMin, 2, b);
  return M;
}

// e^{s t p / z} acting on the quintic basis
inline CohoSeries<RatFunc> quintic_times_exp_tp(const CohoSeries<RatFunc>& C, int sign) {
  CohoSeries<RatFunc> r(C.basis_dim(), C.window(), C.vars(), C.truncation());
  for (auto& [key, s] : C.entries()) {
    if (key.first == 5) {
      r.add(5, key.second, s);
      continue;
    }
    for (auto& [e, c] : s.terms())
      for (int k = 0; key.first + k <= 4; ++k) {
        if (key.second - k < C.window().zMin) break;
        if (e[0] + k > 255) throw std::overflow_error("t exponent overflow");
        Exponent f = e;
        f[0] = static_cast<std::uint8_t>(e[0] + k);
        Rational w = (sign < 0 && k % 2 ? Rational(-1) : Rational(1)) / factorial(k);
        r.add_term(key.first + k, key.second - k, f, c * RatFunc(w));
      }
  }
  return r;
}

// I = z e^{tp/z} sum_d q^{2d} A_d 1_{<d>}, truncated at q-degree D = 2 dmax
inline CohoSeries<RatFunc> quintic_i_function(int D, std::optional<ZWindow> window = {}) {
  ZWindow w = window.value_or(default_window(D));
  auto vars = quintic_vars();
  CohoSeries<RatFunc> base(6, w, vars, D);
  for (int d2 = 0; d2 <= D; ++d2) {
    PZ A = quintic_factor(d2, w.zMin - 1);
    Exponent e{};
    e[1] = static_cast<std::uint8_t>(d2);
    for (auto& [k, c] : A.terms()) base.add_term(quintic_basis(d2, k.first), k.second + 1, e, c);
  }
  return quintic_times_exp_tp(base, +1);
}

}  // namespace orbgw
