#pragma once

#include "series.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

namespace detail {

using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline UPoly upoly_sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  UPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t s = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[s] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly cyclotomic_poly(int m) {
  UPoly p(m + 1, Rational(0));
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = upoly_divmod(p, cyclotomic_poly(d)).first;
  return p;
}

struct CycField {
  int order;  // zeta is a primitive order-th root of unity
  int dim;
  UPoly modulus;
};

inline std::shared_ptr<const CycField> cyc_field(int order) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<CycField>();
  f->order = order;
  f->modulus = cyclotomic_poly(order);
  f->dim = static_cast<int>(f->modulus.size()) - 1;
  cache.emplace(order, f);
  return f;
}

}  // namespace detail

// element of Q(zeta); a null field means a plain rational
class Cyc {
 public:
  Cyc() = default;
  Cyc(const Rational& r) : c_{r} { detail::trim(c_); }
  Cyc(long r) : Cyc(Rational(r)) {}

  static Cyc zeta_pow(int order, long k) {
    auto f = detail::cyc_field(order);
    long e = ((k % order) + order) % order;
    detail::UPoly p(e + 1, Rational(0));
    p[e] = 1;
    Cyc z;
    z.f_ = f;
    z.c_ = detail::upoly_divmod(p, f->modulus).second;
    return z;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("residual zeta dependence: " + str());
    return c_.empty() ? Rational(0) : c_[0];
  }
  const std::vector<Rational>& coeffs() const { return c_; }
  int order() const { return f_ ? f_->order : 0; }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    Cyc r = a;
    r.f_ = join(a, b);
    if (r.c_.size() < b.c_.size()) r.c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    detail::trim(r.c_);
    return r;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    Cyc r;
    r.f_ = join(a, b);
    if (a.c_.empty() || b.c_.empty()) return r;
    if (a.c_.size() == 1) return b.times(a.c_[0], r.f_);
    if (b.c_.size() == 1) return a.times(b.c_[0], r.f_);
    r.c_ = detail::upoly_mul(a.c_, b.c_);
    if (static_cast<int>(r.c_.size()) > r.f_->dim) r.c_ = detail::upoly_divmod(r.c_, r.f_->modulus).second;
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Rational& s) { return a.times(s, a.f_); }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  friend bool operator==(const Cyc& a, const Cyc& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
    if (c_.size() == 1) return Cyc(Rational(1) / c_[0]);
    // extended Euclid: s*a + t*m = g
    detail::UPoly r0 = f_->modulus, r1 = c_, s0, s1{Rational(1)};
    while (!r1.empty()) {
      auto [q, r] = detail::upoly_divmod(r0, r1);
      detail::UPoly s = detail::upoly_sub(s0, detail::upoly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.size() != 1) throw std::domain_error("non-invertible cyclotomic element");
    Cyc out;
    out.f_ = f_;
    out.c_ = s0;
    for (auto& x : out.c_) x /= r0[0];
    detail::trim(out.c_);
    return out;
  }

  // zeta -> zeta^{-1}
  Cyc conj() const {
    if (c_.size() <= 1) return *this;
    Cyc r(0);
    r.f_ = f_;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r += zeta_pow(f_->order, -static_cast<long>(i)) * c_[i];
    return r;
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = f_ ? std::polar(1.0, 2 * std::numbers::pi / f_->order) : 1.0;
    std::complex<double> s = 0, p = 1;
    for (auto& x : c_) {
      s += x.get_d() * p;
      p *= z;
    }
    return s;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[i].get_str();
      if (i) s += "*zeta^" + std::to_string(i);
    }
    return s;
  }

 private:
  static std::shared_ptr<const detail::CycField> join(const Cyc& a, const Cyc& b) {
    if (a.f_ && b.f_ && a.f_ != b.f_) throw std::invalid_argument("mixing cyclotomic fields");
    return a.f_ ? a.f_ : b.f_;
  }
  Cyc times(const Rational& s, std::shared_ptr<const detail::CycField> f) const {
    Cyc r;
    r.f_ = std::move(f);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  std::shared_ptr<const detail::CycField> f_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Cyc& c) { return c.is_zero(); }

}  // namespace orbgw
