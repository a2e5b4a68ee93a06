#pragma once

#include "series.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbgw {

// Laurent polynomial in z with series coefficients
template <class C>
using LaurentZ = std::map<int, Series<C>>;

struct ZWindow {
  int zMin = -1;
  int zMax = 1;
};

inline ZWindow default_window(int D) { return ZWindow{-(D + 2), 1}; }

// (basis index, z power) -> series; powers below zMin are dropped by contract
template <class C>
class CohoSeries {
 public:
  CohoSeries() = default;
  CohoSeries(int basisDim, ZWindow w, VarsPtr vars, int D)
      : N_(basisDim), w_(w), vars_(std::move(vars)), D_(D) {
    if (N_ < 1) throw std::invalid_argument("basis dimension must be positive");
    if (w_.zMin > 0 || w_.zMax < 0) throw std::invalid_argument("z window must contain 0");
  }

  int basis_dim() const { return N_; }
  ZWindow window() const { return w_; }
  const VarsPtr& vars() const { return vars_; }
  int truncation() const { return D_; }
  const std::map<std::pair<int, int>, Series<C>>& entries() const { return entries_; }

  Series<C> get(int basis, int zpow) const {
    check_basis(basis);
    auto it = entries_.find({basis, zpow});
    return it == entries_.end() ? Series<C>(vars_, D_) : it->second;
  }

  void add(int basis, int zpow, const Series<C>& s) {
    check_basis(basis);
    if (s.is_zero()) return;
    if (zpow < w_.zMin) return;
    if (zpow > w_.zMax)
      throw std::out_of_range("z window overflow: need zMax >= " + std::to_string(zpow));
    auto key = std::make_pair(basis, zpow);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, s);
    } else {
      it->second += s;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  void add_term(int basis, int zpow, const Exponent& e, const C& c) {
    check_basis(basis);
    if (zpow < w_.zMin) return;
    if (zpow > w_.zMax)
      throw std::out_of_range("z window overflow: need zMax >= " + std::to_string(zpow));
    auto key = std::make_pair(basis, zpow);
    auto it = entries_.find(key);
    if (it == entries_.end()) it = entries_.emplace(key, Series<C>(vars_, D_)).first;
    it->second.add_term(e, c);
    if (it->second.is_zero()) entries_.erase(it);
  }

  int max_zpow() const {
    int m = w_.zMin - 1;
    for (auto& [k, s] : entries_) m = std::max(m, k.second);
    return m;
  }

  CohoSeries& operator+=(const CohoSeries& o) {
    compatible(o);
    for (auto& [k, s] : o.entries_) add(k.first, k.second, s);
    return *this;
  }
  CohoSeries& operator-=(const CohoSeries& o) {
    compatible(o);
    for (auto& [k, s] : o.entries_) add(k.first, k.second, -s);
    return *this;
  }
  friend CohoSeries operator+(CohoSeries a, const CohoSeries& b) { return a += b; }
  friend CohoSeries operator-(CohoSeries a, const CohoSeries& b) { return a -= b; }

  // multiply every entry by a series (and a z-power shift)
  CohoSeries times(const Series<C>& f, int zshift = 0) const {
    CohoSeries r(N_, w_, vars_, D_);
    for (auto& [k, s] : entries_) r.add(k.first, k.second + zshift, s * f);
    return r;
  }

  // multiply by a Laurent polynomial in z with series coefficients
  CohoSeries times(const LaurentZ<C>& f) const {
    CohoSeries r(N_, w_, vars_, D_);
    for (auto& [k, s] : entries_)
      for (auto& [zp, g] : f) {
        int p = k.second + zp;
        if (p < w_.zMin) continue;
        r.add(k.first, p, s * g);
      }
    return r;
  }

  CohoSeries with_window(ZWindow w) const {
    CohoSeries r(N_, w, vars_, D_);
    for (auto& [k, s] : entries_) r.add(k.first, k.second, s);
    return r;
  }

  CohoSeries truncated(int D) const {
    CohoSeries r(N_, w_, vars_, D);
    for (auto& [k, s] : entries_) r.add(k.first, k.second, s.truncated(D));
    return r;
  }

  template <class F>
  CohoSeries map_series(F f) const {
    CohoSeries r(N_, w_, vars_, D_);
    for (auto& [k, s] : entries_) r.add(k.first, k.second, f(s));
    return r;
  }

  bool is_zero() const { return entries_.empty(); }

  friend bool operator==(const CohoSeries& a, const CohoSeries& b) {
    if (a.N_ != b.N_ || a.entries_.size() != b.entries_.size()) return false;
    for (auto& [k, s] : a.entries_) {
      auto it = b.entries_.find(k);
      if (it == b.entries_.end() || it->second != s) return false;
    }
    return true;
  }

 private:
  void check_basis(int b) const {
    if (b < 0 || b >= N_) throw std::out_of_range("basis index out of range");
  }
  void compatible(const CohoSeries& o) const {
    if (N_ != o.N_ || D_ != o.D_ || !(*vars_ == *o.vars_))
      throw std::invalid_argument("cohomology series mismatch");
  }

  int N_ = 1;
  ZWindow w_;
  VarsPtr vars_;
  int D_ = 0;
  std::map<std::pair<int, int>, Series<C>> entries_;
};

// e^{a/z} truncated in both z and series degree; a must have no degree-0 part
template <class C>
LaurentZ<C> exp_over_z(const Series<C>& a, int zMin) {
  require_no_degree_zero(a, "exp_over_z");
  LaurentZ<C> out;
  Series<C> p = Series<C>::constant(a.vars(), a.truncation(), C(1));
  for (int k = 0; -k >= zMin && !p.is_zero(); ++k) {
    out.emplace(-k, p);
    p = (p * a).scaled(C(Rational(1, k + 1)));
  }
  return out;
}

}  // namespace orbgw
