#pragma once

#include "rational.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbgw {

inline constexpr int kMaxLambda = 8;

using LamMono = std::array<std::uint8_t, kMaxLambda>;

inline int mono_degree(const LamMono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

// descending graded-lex, so begin() is the leading term
struct GrlexDesc {
  bool operator()(const LamMono& a, const LamMono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

class Poly {
 public:
  using Terms = std::map<LamMono, Rational, GrlexDesc>;

  Poly() = default;
  Poly(const Rational& c) {
    if (c != 0) terms_[LamMono{}] = c;
  }
  Poly(long c) : Poly(Rational(c)) {}

  static Poly lambda(int j) {
    if (j < 1 || j > kMaxLambda) throw std::out_of_range("lambda index");
    LamMono m{};
    m[j - 1] = 1;
    Poly p;
    p.terms_[m] = 1;
    return p;
  }
  static Poly monomial(const LamMono& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_[m] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
  }
  Rational constant() const {
    auto it = terms_.find(LamMono{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool is_monomial() const { return terms_.size() == 1; }
  const LamMono& lead_mono() const { return terms_.begin()->first; }
  const Rational& lead_coef() const { return terms_.begin()->second; }
  int degree() const { return terms_.empty() ? -1 : mono_degree(lead_mono()); }

  // bitmask of lambdas that occur
  unsigned support() const {
    unsigned s = 0;
    for (auto& [m, c] : terms_)
      for (int j = 0; j < kMaxLambda; ++j)
        if (m[j]) s |= 1u << j;
    return s;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_constant()) return b * a.constant();
    if (b.is_constant()) return a * b.constant();
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(mul_mono(ma, mb), ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  void add_term(const LamMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static LamMono mul_mono(const LamMono& a, const LamMono& b) {
    LamMono r;
    for (int j = 0; j < kMaxLambda; ++j) {
      int e = a[j] + b[j];
      if (e > 255) throw std::overflow_error("lambda exponent overflow");
      r[j] = static_cast<std::uint8_t>(e);
    }
    return r;
  }

  // min exponent of every lambda over all terms
  LamMono min_mono() const {
    LamMono r;
    r.fill(255);
    for (auto& [m, c] : terms_)
      for (int j = 0; j < kMaxLambda; ++j) r[j] = std::min(r[j], m[j]);
    if (terms_.empty()) r.fill(0);
    return r;
  }
  Poly div_mono(const LamMono& d) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      LamMono q;
      for (int j = 0; j < kMaxLambda; ++j) q[j] = m[j] - d[j];
      r.terms_.emplace(q, c);
    }
    return r;
  }

  Rational eval_zero() const { return constant(); }

  Poly permute(const std::array<int, kMaxLambda>& perm) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      LamMono q{};
      for (int j = 0; j < kMaxLambda; ++j) q[perm[j]] = m[j];
      r.terms_.emplace(q, c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
      Rational a = c;
      if (!first) {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      } else if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
      bool unit = mono_degree(m) == 0;
      bool sep = false;
      if (a != 1 || unit) {
        os << a.get_str();
        sep = true;
      }
      for (int j = 0; j < kMaxLambda; ++j) {
        if (!m[j]) continue;
        if (sep) os << "*";
        os << "l" << (j + 1);
        if (m[j] > 1) os << "^" << int(m[j]);
        sep = true;
      }
    }
    return os.str();
  }

 private:
  Terms terms_;
};

namespace detail {

// univariate remainder in variable v (all terms use only v)
inline std::pair<Poly, Poly> univ_divmod(Poly a, const Poly& b, int v) {
  Poly q;
  int db = b.degree();
  const Rational& lb = b.lead_coef();
  while (!a.is_zero() && a.degree() >= db) {
    LamMono m{};
    m[v] = static_cast<std::uint8_t>(a.degree() - db);
    Rational c = a.lead_coef() / lb;
    Poly t = Poly::monomial(m, c);
    q += t;
    a -= t * b;
  }
  return {q, a};
}

inline Poly univ_gcd(Poly a, Poly b, int v) {
  while (!b.is_zero()) {
    Poly r = univ_divmod(a, b, v).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a *= Rational(1) / a.lead_coef();
  return a;
}

}  // namespace detail

// element of Q(l1..l8): num/den with den monic under grlex
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(long c) : RatFunc(Rational(c)) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}
  RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
  }

  static RatFunc lambda(int j) { return RatFunc(Poly::lambda(j)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("not a rational constant: " + str());
    return num_.constant() / den_.constant();
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_, true);
    if (a.den_.is_monomial() && b.den_.is_monomial()) {
      // lcm of monic monomials
      const LamMono& ma = a.den_.lead_mono();
      const LamMono& mb = b.den_.lead_mono();
      LamMono l, fa, fb;
      for (int j = 0; j < kMaxLambda; ++j) {
        l[j] = std::max(ma[j], mb[j]);
        fa[j] = l[j] - ma[j];
        fb[j] = l[j] - mb[j];
      }
      Poly n = a.num_ * Poly::monomial(fa, 1) + b.num_ * Poly::monomial(fb, 1);
      return RatFunc(std::move(n), Poly::monomial(l, 1), true);
    }
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_rational_fast()) return b.scaled(a.num_.constant());
    if (b.is_rational_fast()) return a.scaled(b.num_.constant());
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    if (b.is_rational_fast()) return a.scaled(Rational(1) / b.num_.constant());
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const { return RatFunc(1) / *this; }

  // value at l = 0; throws if the denominator vanishes there
  Rational eval_zero() const {
    Rational d = den_.eval_zero();
    if (d == 0) throw std::domain_error("pole at lambda = 0: " + str());
    return num_.eval_zero() / d;
  }

  RatFunc permute(const std::array<int, kMaxLambda>& perm) const {
    return RatFunc(num_.permute(perm), den_.permute(perm));
  }

  std::string str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  static RatFunc parse(const std::string& s);

 private:
  RatFunc(Poly n, Poly d, bool) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  bool is_rational_fast() const { return num_.is_constant() && den_.is_constant(); }
  RatFunc scaled(const Rational& s) const {
    RatFunc r = *this;
    r.num_ *= s;
    if (r.num_.is_zero()) r.den_ = Poly(1);
    return r;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (den_.is_constant()) {
      Rational c = den_.constant();
      if (c != 1) {
        num_ *= Rational(1) / c;
        den_ = Poly(1);
      }
      return;
    }
    LamMono mn = num_.min_mono(), md = den_.min_mono(), g;
    bool strip = false;
    for (int j = 0; j < kMaxLambda; ++j) {
      g[j] = std::min(mn[j], md[j]);
      strip |= g[j] != 0;
    }
    if (strip) {
      num_ = num_.div_mono(g);
      den_ = den_.div_mono(g);
    }
    unsigned sup = num_.support() | den_.support();
    if (sup && (sup & (sup - 1)) == 0 && !den_.is_constant()) {
      int v = 0;
      while (!(sup >> v & 1u)) ++v;
      Poly gcd = detail::univ_gcd(num_, den_, v);
      if (gcd.degree() > 0) {
        num_ = detail::univ_divmod(num_, gcd, v).first;
        den_ = detail::univ_divmod(den_, gcd, v).first;
      }
    }
    Rational lc = den_.lead_coef();
    if (lc != 1) {
      Rational inv = Rational(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.str(); }
inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

namespace detail {

class RatFuncParser {
 public:
  explicit RatFuncParser(const std::string& s) : s_(s) {}

  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse rational function '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      if (eat('*'))
        r *= factor();
      else if (eat('/'))
        r /= factor();
      else
        return r;
    }
  }
  RatFunc factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    RatFunc base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      RatFunc r(1);
      for (int i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }
  RatFunc primary() {
    skip();
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (pos_ < s_.size() && s_[pos_] == 'l') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected lambda index");
      int j = std::stoi(s_.substr(start, pos_ - start));
      if (j < 1 || j > kMaxLambda) fail("lambda index out of range");
      return RatFunc::lambda(j);
    }
    fail("unexpected character");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc RatFunc::parse(const std::string& s) { return detail::RatFuncParser(s).run(); }

}  // namespace orbgw
