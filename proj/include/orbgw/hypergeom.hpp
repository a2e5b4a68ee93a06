#pragma once

#include "coho.hpp"
#include "model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

using LaurentPoly = std::map<int, RatFunc>;

inline VarsPtr x_vars(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return make_vars(names);
}

inline Exponent to_exponent(const std::vector<int>& k) {
  if (k.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("too many exponents");
  Exponent e{};
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0 || k[i] > 255) throw std::out_of_range("exponent out of range");
    e[i] = static_cast<std::uint8_t>(k[i]);
  }
  return e;
}

inline Rational multinomial_weight(const std::vector<int>& k) {
  Rational w(1);
  for (int ki : k) w /= factorial(ki);
  return w;
}

// z sum_k x^k/(k! z^{|k|}) on component sum i k_i mod n
inline CohoSeries<RatFunc> j_un_bzn(int n, int D) {
  if (n < 2) throw std::invalid_argument("j_un_bzn: n must be at least 2");
  auto vars = x_vars(n);
  CohoSeries<RatFunc> J(n, ZWindow{1 - D, 1}, vars, D);
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      int tot = 0, s = 0;
      for (int j = 0; j < n; ++j) {
        tot += k[j];
        s += j * k[j];
      }
      J.add_term(s % n, 1 - tot, to_exponent(k), RatFunc(multinomial_weight(k)));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[i] = e;
      rec(i + 1, left - e);
    }
    k[i] = 0;
  };
  rec(0, D);
  return J;
}

struct TopTypeEntry {
  std::vector<int> k;      // insertion multiplicities per basis class
  int outComponent = 0;    // component carrying the J-contribution
  int lastMarking = 0;     // involution of the output component
  Rational multiplicity;   // 1/k!
};

// all k with |k| <= D for a cyclic model; vars in zeroVars are held at 0
inline std::vector<TopTypeEntry> enumerate_toptypes(const OrbifoldModel& m, int D,
                                                    const std::vector<bool>& zeroVars = {}) {
  if (!m.cyclicOrder) throw std::invalid_argument("enumerate_toptypes: model is not a cyclic quotient");
  int n = m.N;
  std::vector<TopTypeEntry> out;
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      int s = 0;
      for (int j = 0; j < n; ++j) s += j * k[j];
      TopTypeEntry t;
      t.k = k;
      t.outComponent = s % n;
      t.lastMarking = m.involution[t.outComponent];
      t.multiplicity = multinomial_weight(k);
      out.push_back(t);
      return;
    }
    int top = (i < static_cast<int>(zeroVars.size()) && zeroVars[i]) ? 0 : left;
    for (int e = 0; e <= top; ++e) {
      k[i] = e;
      rec(i + 1, left - e);
    }
    k[i] = 0;
  };
  rec(0, D);
  return out;
}

// N^{(j)} = <rho_j, d> - sum of insertion f-weights + f-weight of the output component
inline std::vector<long> n_theta(const OrbifoldModel& m, const TopTypeEntry& t) {
  std::vector<long> N;
  for (int j = 0; j < m.r; ++j) {
    Rational v = m.fWeights[t.outComponent][j];
    for (int i = 0; i < m.N; ++i) v -= t.k[i] * m.fWeights[i][j];
    if (!is_integer(v))
      throw std::domain_error("non-integral N_theta for model '" + m.name + "': " + to_string(v));
    N.push_back(floor_long(v));
  }
  return N;
}

// a factor (lam + c z)^{power} with lam a polynomial in the lambdas
struct LinearFactor {
  Poly lam;
  Rational zcoef;
  int power = 1;
};

inline std::vector<LinearFactor> modification_factors(const OrbifoldModel& m, const TopTypeEntry& t) {
  std::vector<LinearFactor> fs;
  if (m.twist == Twist::Untwisted) return fs;
  auto N = n_theta(m, t);
  int sign = m.twist == Twist::EulerClass ? 1 : -1;
  for (int j = 0; j < m.r; ++j) {
    const Rational& f = m.fWeights[t.outComponent][j];
    Poly lam = Poly::lambda(j + 1);
    if (N[j] >= 0) {
      for (long mm = 1; mm <= N[j]; ++mm) fs.push_back({lam, mm - f, sign});
    } else {
      for (long mm = N[j] + 1; mm <= 0; ++mm) fs.push_back({lam, mm - f, -sign});
    }
  }
  return fs;
}

// product of linear factors as a Laurent polynomial in z, dropping powers below lowest
inline LaurentPoly expand_factors(const std::vector<LinearFactor>& fs, int lowest) {
  int topdeg = 0;
  for (auto& f : fs)
    if (f.power > 0 && f.zcoef != 0) ++topdeg;
  int cut = lowest - topdeg;
  std::map<int, Poly> poly{{0, Poly(1)}};
  for (auto& f : fs) {
    if (f.power > 0) {
      std::map<int, Poly> next;
      for (auto& [zp, c] : poly) {
        next[zp] += c * f.lam;
        if (f.zcoef != 0) next[zp + 1] += c * f.zcoef;
      }
      poly.swap(next);
    }
  }
  LaurentPoly out;
  for (auto& [zp, c] : poly)
    if (!c.is_zero()) out[zp] = RatFunc(c);
  for (auto& f : fs) {
    if (f.power > 0) continue;
    LaurentPoly inv;
    if (f.zcoef == 0) {
      inv[0] = RatFunc(1) / RatFunc(f.lam);
    } else {
      // 1/(lam + c z) = sum_m (-lam)^m c^{-m-1} z^{-m-1}
      Rational ci = Rational(1) / f.zcoef;
      Poly lp(1);
      Rational cp = ci;
      for (int mm = 0; -mm - 1 >= cut; ++mm) {
        inv[-mm - 1] = RatFunc(lp * cp);
        lp = lp * (-f.lam);
        cp *= ci;
      }
    }
    LaurentPoly next;
    for (auto& [a, x] : out)
      for (auto& [b, y] : inv) {
        if (a + b < cut) continue;
        next[a + b] += x * y;
      }
    out.clear();
    for (auto& [zp, c] : next)
      if (!c.is_zero()) out[zp] = c;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->first < lowest)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

inline LaurentPoly modification_factor(const OrbifoldModel& m, const TopTypeEntry& t, ZWindow w) {
  int tot = 0;
  for (int ki : t.k) tot += ki;
  return expand_factors(modification_factors(m, t), w.zMin - (1 - tot));
}

struct IOptions {
  std::optional<ZWindow> window;
  std::vector<bool> zeroVars;
  bool untwisted = false;
};

// sum_k M_k(z) z^{1-|k|} x^k/k! on the output component
inline CohoSeries<RatFunc> i_twisted(const OrbifoldModel& m, int D, const IOptions& opt = {}) {
  if (!m.cyclicOrder) throw std::invalid_argument("i_twisted: use the quintic pipeline for non-cyclic models");
  ZWindow w = opt.window.value_or(default_window(D));
  CohoSeries<RatFunc> I(m.N, w, x_vars(m.N), D);
  for (auto& t : enumerate_toptypes(m, D, opt.zeroVars)) {
    int tot = 0;
    for (int ki : t.k) tot += ki;
    Exponent e = to_exponent(t.k);
    if (opt.untwisted) {
      I.add_term(t.outComponent, 1 - tot, e, RatFunc(t.multiplicity));
      continue;
    }
    for (auto& [zp, c] : modification_factor(m, t, w)) {
      int p = zp + 1 - tot;
      if (p > w.zMax)
        throw std::out_of_range("i_twisted: z window too small, need zMax >= " + std::to_string(p));
      I.add_term(t.outComponent, p, e, c * RatFunc(t.multiplicity));
    }
  }
  return I;
}

namespace detail {

// apply (sum_i c_i z x_i d/dx_i + lam) - shift z
inline CohoSeries<RatFunc> apply_bet(const CohoSeries<RatFunc>& I, const RatFunc& lam,
                                     const std::vector<Rational>& c, const Rational& shift) {
  CohoSeries<RatFunc> out(I.basis_dim(), I.window(), I.vars(), I.truncation());
  for (auto& [key, s] : I.entries()) {
    if (!lam.is_zero()) out.add(key.first, key.second, s * lam);
    for (auto& [e, a] : s.terms()) {
      Rational v = -shift;
      for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * e[i];
      if (v != 0) out.add_term(key.first, key.second + 1, e, a * RatFunc(v));
    }
  }
  return out;
}

}  // namespace detail

// Picard-Fuchs relation for [C^2/Z_n] indexed by k in Z^{n-1} with n | sum i k_i
inline CohoSeries<RatFunc> pf_residual(int n, const std::vector<int>& k, const CohoSeries<RatFunc>& I) {
  if (static_cast<int>(k.size()) != n - 1) throw std::invalid_argument("pf_residual: k must have n-1 entries");
  long sa = 0, sb = 0;
  for (int i = 1; i < n; ++i) {
    sa += static_cast<long>(n - i) * k[i - 1];
    sb += static_cast<long>(i) * k[i - 1];
  }
  if (sb % n != 0) throw std::invalid_argument("pf_residual: n must divide sum i k_i");
  long a = sa / n, b = sb / n;
  // operator j = 0..n; D_0 = -a, D_j = k_j, D_n = -b
  std::vector<long> Dj(n + 1);
  Dj[0] = -a;
  Dj[n] = -b;
  for (int i = 1; i < n; ++i) Dj[i] = k[i - 1];
  auto op = [&](int j, const CohoSeries<RatFunc>& F, long mshift) {
    std::vector<Rational> c(n, Rational(0));
    RatFunc lam(0);
    if (j == 0) {
      lam = RatFunc::lambda(1);
      for (int i = 1; i < n; ++i) c[i] = -make_rational(n - i, n);
    } else if (j == n) {
      lam = RatFunc::lambda(2);
      for (int i = 1; i < n; ++i) c[i] = -make_rational(i, n);
    } else {
      c[j] = 1;
    }
    return detail::apply_bet(F, lam, c, Rational(mshift));
  };
  int nfac = 0;
  for (auto d : Dj) nfac += static_cast<int>(d > 0 ? d : -d);
  ZWindow w = I.window();
  w.zMax += nfac;
  CohoSeries<RatFunc> base = I.with_window(w);
  CohoSeries<RatFunc> lhs = base, rhs = base;
  for (int j = 0; j <= n; ++j) {
    if (Dj[j] > 0)
      for (long mm = 0; mm < Dj[j]; ++mm) lhs = op(j, lhs, mm);
    if (Dj[j] < 0)
      for (long mm = 0; mm < -Dj[j]; ++mm) rhs = op(j, rhs, mm);
  }
  std::vector<int> kp(n, 0), km(n, 0);
  for (int i = 1; i < n; ++i) {
    if (k[i - 1] > 0) kp[i] = k[i - 1];
    if (k[i - 1] < 0) km[i] = -k[i - 1];
  }
  auto xp = Series<RatFunc>::monomial(I.vars(), I.truncation(), to_exponent(kp), RatFunc(1));
  auto xm = Series<RatFunc>::monomial(I.vars(), I.truncation(), to_exponent(km), RatFunc(1));
  return lhs.times(xm) - rhs.times(xp);
}

// z d/dx0 I - I, valid through degree D-1
inline CohoSeries<RatFunc> string_residual(const CohoSeries<RatFunc>& I) {
  int D = I.truncation();
  CohoSeries<RatFunc> r(I.basis_dim(), I.window(), I.vars(), D - 1);
  for (auto& [key, s] : I.entries()) {
    r.add(key.first, key.second + 1, s.diff(0).truncated(D - 1));
    r.add(key.first, key.second, -s.truncated(D - 1));
  }
  return r;
}

}  // namespace orbgw
