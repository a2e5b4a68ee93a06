#pragma once

#include "ratfunc.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace orbgw {

inline constexpr int kMaxVars = 16;

using Exponent = std::array<std::uint8_t, kMaxVars>;

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const RatFunc& r) { return r.is_zero(); }

namespace detail {
template <class C>
bool coef_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

// ordered names with integer degree weights
class VarSet {
 public:
  VarSet(std::vector<std::string> names, std::vector<int> weights = {})
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() > kMaxVars) throw std::invalid_argument("too many series variables");
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size()) throw std::invalid_argument("weight count mismatch");
    for (int w : weights_)
      if (w < 0) throw std::invalid_argument("negative variable weight");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable " + names_[i]);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int weight(std::size_t i) const { return weights_.at(i); }

  int index(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable " + n);
  }

  int degree(const Exponent& e) const {
    int d = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) d += weights_[i] * e[i];
    return d;
  }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using VarsPtr = std::shared_ptr<const VarSet>;

inline VarsPtr make_vars(std::vector<std::string> names, std::vector<int> weights = {}) {
  return std::make_shared<const VarSet>(std::move(names), std::move(weights));
}

inline Exponent exp_mul(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = a[i] + b[i];
    if (e > 255) throw std::overflow_error("series exponent overflow");
    r[i] = static_cast<std::uint8_t>(e);
  }
  return r;
}

// truncated power series in weighted total degree <= D
template <class C>
class Series {
 public:
  using Terms = std::map<Exponent, C>;

  Series() = default;
  Series(VarsPtr vars, int D) : vars_(std::move(vars)), D_(D) {
    if (!vars_) throw std::invalid_argument("null variable set");
    if (D_ < 0) throw std::invalid_argument("negative truncation");
  }

  static Series constant(VarsPtr vars, int D, const C& c) {
    Series s(std::move(vars), D);
    s.add_term(Exponent{}, c);
    return s;
  }
  static Series variable(VarsPtr vars, int D, const std::string& name) {
    Series s(vars, D);
    Exponent e{};
    e[vars->index(name)] = 1;
    s.add_term(e, C(1));
    return s;
  }
  static Series monomial(VarsPtr vars, int D, const Exponent& e, const C& c) {
    Series s(std::move(vars), D);
    s.add_term(e, c);
    return s;
  }

  const VarsPtr& vars() const { return vars_; }
  int truncation() const { return D_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree(const Exponent& e) const { return vars_->degree(e); }

  C coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }
  C coeff(std::initializer_list<int> ex) const {
    Exponent e{};
    int i = 0;
    for (int v : ex) e[i++] = static_cast<std::uint8_t>(v);
    return coeff(e);
  }
  C constant_term() const { return coeff(Exponent{}); }

  void add_term(const Exponent& e, const C& c) {
    if (detail::coef_zero(c)) return;
    if (degree(e) > D_) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (detail::coef_zero(it->second)) terms_.erase(it);
    }
  }

  // lowest weighted degree of a stored term, D+1 when zero
  int min_degree() const {
    int m = D_ + 1;
    for (auto& [e, c] : terms_) m = std::min(m, degree(e));
    return m;
  }

  Series truncated(int D) const {
    if (D > D_) throw std::invalid_argument("cannot raise truncation");
    Series r(vars_, D);
    for (auto& [e, c] : terms_)
      if (degree(e) <= D) r.terms_.emplace(e, c);
    return r;
  }

  // same terms, relabelled bound; only for raising when the caller knows it is exact
  Series with_truncation(int D) const {
    Series r(vars_, D);
    for (auto& [e, c] : terms_)
      if (degree(e) <= D) r.terms_.emplace(e, c);
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  Series& operator+=(const Series& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Series& operator-=(const Series& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  template <class S>
  Series scaled(const S& s) const {
    Series r(vars_, D_);
    for (auto& [e, c] : terms_) {
      C v = c * s;
      if (!detail::coef_zero(v)) r.terms_.emplace(e, std::move(v));
    }
    return r;
  }
  friend Series operator*(const Series& a, const C& s) { return a.scaled(s); }
  friend Series operator*(const C& s, const Series& a) { return a.scaled(s); }

  friend Series operator*(const Series& a, const Series& b) {
    a.check(b);
    return mul_trunc(a, b, a.D_);
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  friend bool operator==(const Series& a, const Series& b) {
    if (!(*a.vars_ == *b.vars_) || a.D_ != b.D_ || a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (auto& [e, c] : a.terms_) {
      if (ib->first != e || !(ib->second == c)) return false;
      ++ib;
    }
    return true;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  // product truncated at D; coefficient types may differ when C * B -> C
  template <class B>
  static Series mul_trunc(const Series& a, const Series<B>& b, int D) {
    Series r(a.vars_, D);
    if (a.is_zero() || b.is_zero()) return r;
    auto ga = a.by_degree();
    auto gb = b.by_degree();
    for (auto& [da, ea, ca] : ga) {
      if (da + std::get<0>(gb.front()) > D) break;
      for (auto& [db, eb, cb] : gb) {
        if (da + db > D) break;
        r.add_raw(exp_mul(*ea, *eb), (*ca) * (*cb));
      }
    }
    r.prune();
    return r;
  }

  std::vector<std::tuple<int, const Exponent*, const C*>> by_degree() const {
    std::vector<std::tuple<int, const Exponent*, const C*>> v;
    v.reserve(terms_.size());
    for (auto& [e, c] : terms_) v.emplace_back(degree(e), &e, &c);
    std::stable_sort(v.begin(), v.end(),
                     [](auto& x, auto& y) { return std::get<0>(x) < std::get<0>(y); });
    return v;
  }

  // homogeneous components by weighted degree, index 0..D
  std::vector<Series> graded() const {
    std::vector<Series> g(D_ + 1, Series(vars_, D_));
    for (auto& [e, c] : terms_) g[degree(e)].terms_.emplace(e, c);
    return g;
  }

  Series diff(const std::string& var) const { return diff(vars_->index(var)); }
  Series diff(int i) const {
    Series r(vars_, D_);
    for (auto& [e, c] : terms_) {
      if (!e[i]) continue;
      Exponent f = e;
      --f[i];
      r.terms_.emplace(f, c * C(static_cast<long>(e[i])));
    }
    return r;
  }
  // x_i d/dx_i
  Series euler(int i) const {
    Series r(vars_, D_);
    for (auto& [e, c] : terms_)
      if (e[i]) r.terms_.emplace(e, c * C(static_cast<long>(e[i])));
    return r;
  }
  Series euler(const std::string& var) const { return euler(vars_->index(var)); }

  template <class F>
  auto map_coeffs(F f) const {
    using R = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Series<R> r(vars_, D_);
    for (auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  // same coefficients, reinterpreted in another variable set of equal size
  Series rebind(VarsPtr v, int D) const {
    if (v->size() < vars_->size()) throw std::invalid_argument("rebind to smaller variable set");
    Series r(std::move(v), D);
    for (auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  void check(const Series& o) const {
    if (!vars_ || !o.vars_) throw std::invalid_argument("uninitialised series");
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_))
      throw std::invalid_argument("series variable mismatch");
    if (D_ != o.D_) throw std::invalid_argument("series truncation mismatch");
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    std::vector<std::pair<Exponent, const C*>> v;
    for (auto& [e, c] : terms_) v.emplace_back(e, &c);
    std::stable_sort(v.begin(), v.end(), [&](auto& x, auto& y) {
      int dx = degree(x.first), dy = degree(y.first);
      if (dx != dy) return dx < dy;
      return x.first > y.first;
    });
    for (auto& [e, c] : v) {
      if (!s.empty()) s += " + ";
      s += "(" + coef_string(*c) + ")";
      for (std::size_t i = 0; i < vars_->size(); ++i) {
        if (!e[i]) continue;
        s += "*" + vars_->name(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  template <class>
  friend class Series;

  void add_raw(const Exponent& e, C&& c) {
    auto [it, fresh] = terms_.try_emplace(e, std::move(c));
    if (!fresh) it->second += c;
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (detail::coef_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  static std::string coef_string(const Rational& r) { return r.get_str(); }
  template <class X>
  static std::string coef_string(const X& x) {
    return x.str();
  }

  VarsPtr vars_;
  int D_ = 0;
  Terms terms_;
};

template <class C>
Series<C> pow(const Series<C>& s, int e) {
  Series<C> r = Series<C>::constant(s.vars(), s.truncation(), C(1));
  for (int i = 0; i < e; ++i) r *= s;
  return r;
}

template <class C>
void require_no_degree_zero(const Series<C>& s, const char* what) {
  for (auto& [e, c] : s.terms())
    if (s.degree(e) == 0) throw std::domain_error(std::string(what) + ": nonzero degree-0 part");
}

// exp via E(exp f) = exp f * E f with E the weighted Euler operator
template <class C>
Series<C> exp(const Series<C>& f) {
  require_no_degree_zero(f, "exp");
  int D = f.truncation();
  auto fg = f.graded();
  std::vector<Series<C>> g(D + 1, Series<C>(f.vars(), D));
  g[0] = Series<C>::constant(f.vars(), D, C(1));
  Series<C> out = g[0];
  for (int d = 1; d <= D; ++d) {
    Series<C> acc(f.vars(), D);
    for (int j = 1; j <= d; ++j) {
      if (fg[j].is_zero() || g[d - j].is_zero()) continue;
      acc += Series<C>::mul_trunc(fg[j], g[d - j], D).scaled(C(static_cast<long>(j)));
    }
    g[d] = acc.scaled(C(Rational(1, d)));
    out += g[d];
  }
  return out;
}

template <class C>
Series<C> log(const Series<C>& g) {
  int D = g.truncation();
  auto gg = g.graded();
  Series<C> one = Series<C>::constant(g.vars(), D, C(1));
  if (gg[0] != one) throw std::domain_error("log: degree-0 part must be 1");
  std::vector<Series<C>> h(D + 1, Series<C>(g.vars(), D));
  Series<C> out(g.vars(), D);
  for (int d = 1; d <= D; ++d) {
    Series<C> acc = gg[d].scaled(C(static_cast<long>(d)));
    for (int j = 1; j < d; ++j) {
      if (gg[j].is_zero() || h[d - j].is_zero()) continue;
      acc -= Series<C>::mul_trunc(gg[j], h[d - j], D).scaled(C(static_cast<long>(d - j)));
    }
    h[d] = acc.scaled(C(Rational(1, d)));
    out += h[d];
  }
  return out;
}

template <class C>
Series<C> inv(const Series<C>& g) {
  int D = g.truncation();
  auto gg = g.graded();
  C c0 = g.constant_term();
  if (gg[0].size() != (is_zero(c0) ? 0u : 1u))
    throw std::domain_error("inv: degree-0 part is not a constant");
  if (is_zero(c0)) throw std::domain_error("inv: constant term not invertible");
  C u = C(1) / c0;
  std::vector<Series<C>> h(D + 1, Series<C>(g.vars(), D));
  h[0] = Series<C>::constant(g.vars(), D, u);
  Series<C> out = h[0];
  for (int d = 1; d <= D; ++d) {
    Series<C> acc(g.vars(), D);
    for (int j = 1; j <= d; ++j) {
      if (gg[j].is_zero() || h[d - j].is_zero()) continue;
      acc += Series<C>::mul_trunc(gg[j], h[d - j], D);
    }
    h[d] = acc.scaled(-u);
    out += h[d];
  }
  return out;
}

namespace detail {

template <class C, class S>
struct Composer {
  const std::vector<Series<S>>& subs;
  VarsPtr target;
  int D;
  std::vector<int> mindeg;
  std::vector<std::vector<Series<S>>> powers;

  Composer(const std::vector<Series<S>>& s, VarsPtr t, int d) : subs(s), target(std::move(t)), D(d) {
    mindeg.resize(subs.size());
    powers.resize(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!is_zero(subs[i].constant_term()))
        throw std::domain_error("compose: substitution with nonzero constant term");
      mindeg[i] = subs[i].min_degree();
      powers[i].push_back(Series<S>::constant(target, D, S(1)));
    }
  }

  const Series<S>& power(std::size_t i, int e) {
    while (static_cast<int>(powers[i].size()) <= e)
      powers[i].push_back(Series<S>::mul_trunc(powers[i].back(), subs[i].with_truncation(D), D));
    return powers[i][e];
  }

  using Item = std::pair<const Exponent*, const C*>;

  Series<C> run(std::vector<Item>& items, std::size_t var, int budget) {
    Series<C> out(target, D);
    if (items.empty() || budget < 0) return out;
    if (var == subs.size()) {
      for (auto& [e, c] : items) out.add_term(Exponent{}, *c);
      return out;
    }
    std::map<int, std::vector<Item>> groups;
    for (auto& it : items) groups[(*it.first)[var]].push_back(it);
    for (auto& [e, sub] : groups) {
      int b = budget - e * mindeg[var];
      if (b < 0) continue;
      Series<C> inner = run(sub, var + 1, b);
      if (inner.is_zero()) continue;
      if (e == 0) {
        out += inner;
      } else {
        const Series<S>& p = power(var, e);
        if (p.is_zero()) continue;
        out += Series<C>::mul_trunc(inner, p, D);
      }
    }
    return out;
  }
};

}  // namespace detail

// f(subs[0], subs[1], ...) with subs in the target variables, truncated at D
template <class C, class S>
Series<C> compose(const Series<C>& f, const std::vector<Series<S>>& subs, VarsPtr target, int D) {
  if (subs.size() != f.vars()->size()) throw std::invalid_argument("compose: substitution count");
  for (auto& s : subs)
    if (!(*s.vars() == *target)) throw std::invalid_argument("compose: substitution variables");
  detail::Composer<C, S> comp(subs, target, D);
  std::vector<typename detail::Composer<C, S>::Item> items;
  for (auto& [e, c] : f.terms()) items.emplace_back(&e, &c);
  return comp.run(items, 0, D);
}

// conversion of RatFunc-valued series to rational series, failing on lambda-dependence
inline Series<Rational> to_rational_series(const Series<RatFunc>& s) {
  return s.map_coeffs([](const RatFunc& c) { return c.to_rational(); });
}
inline Series<RatFunc> to_ratfunc_series(const Series<Rational>& s) {
  return s.map_coeffs([](const Rational& c) { return RatFunc(c); });
}

// polynomial-coefficient series split by lambda monomial
inline std::map<LamMono, Series<Rational>> split_lambda(const Series<RatFunc>& s, Poly* common_den) {
  std::map<LamMono, Series<Rational>> out;
  Poly den(1);
  bool first = true;
  for (auto& [e, c] : s.terms()) {
    if (first) {
      den = c.den();
      first = false;
    } else if (!(c.den() == den)) {
      throw std::domain_error("split_lambda: coefficients with different denominators");
    }
  }
  if (common_den) *common_den = den;
  for (auto& [e, c] : s.terms())
    for (auto& [m, r] : c.num().terms()) {
      auto it = out.find(m);
      if (it == out.end()) it = out.emplace(m, Series<Rational>(s.vars(), s.truncation())).first;
      it->second.add_term(e, r);
    }
  return out;
}

inline Series<RatFunc> join_lambda(const std::map<LamMono, Series<Rational>>& parts, const Poly& den,
                                   VarsPtr vars, int D) {
  std::map<Exponent, Poly> acc;
  for (auto& [m, s] : parts)
    for (auto& [e, r] : s.terms()) acc[e].add_term(m, r);
  Series<RatFunc> out(std::move(vars), D);
  for (auto& [e, p] : acc)
    if (!p.is_zero()) out.add_term(e, RatFunc(p, den));
  return out;
}

// composition of a lambda-polynomial series with rational substitutions, one lambda monomial at a time
inline Series<RatFunc> compose_split(const Series<RatFunc>& f, const std::vector<Series<Rational>>& subs,
                                     VarsPtr target, int D) {
  Poly den;
  auto parts = split_lambda(f, &den);
  std::map<LamMono, Series<Rational>> done;
  for (auto& [m, s] : parts) done.emplace(m, compose(s, subs, target, D));
  return join_lambda(done, den, target, D);
}

inline std::complex<double> to_complex(const Rational& r) { return {r.get_d(), 0.0}; }

// numeric evaluation of a rational series at a complex point
inline std::complex<double> evaluate(const Series<Rational>& s, const std::vector<std::complex<double>>& x) {
  if (x.size() != s.vars()->size()) throw std::invalid_argument("evaluate: point dimension");
  std::complex<double> sum = 0;
  for (auto& [e, c] : s.terms()) {
    std::complex<double> t = c.get_d();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

}  // namespace orbgw
