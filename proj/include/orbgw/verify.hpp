#pragma once

#include "crepant.hpp"
#include "invariants.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace orbgw {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct CheckFn {
  std::string suite;
  std::string name;
  std::function<Verdict()> run;
};

inline CheckResult run_guarded(const CheckFn& c) {
  try {
    auto v = c.run();
    return {c.suite, c.name, v.pass, v.detail};
  } catch (const std::exception& e) {
    return {c.suite, c.name, false, std::string("exception: ") + e.what()};
  }
}

inline std::vector<CheckFn> series_suite() {
  std::vector<CheckFn> v;
  v.push_back({"series", "gamma1-shift", [] {
    int bad = 0;
    for (int smax = 0; smax <= 4; ++smax) {
      int D = g_function_exact_degree(smax);
      auto G0 = g_function(Rational(0), "x", smax, D);
      for (auto y : {make_rational(1, 2), make_rational(1, 3), make_rational(2, 3), make_rational(3, 5)})
        if (!(g_function(y, "x", smax, D) == shift_x(G0, y))) ++bad;
    }
    return Verdict{bad == 0, std::to_string(bad) + " mismatches over smax 0..4"};
  }});
  v.push_back({"series", "gamma2-period", [] {
    int bad = 0;
    for (int smax = 0; smax <= 4; ++smax) {
      int D = g_function_exact_degree(smax);
      auto G0 = g_function(Rational(0), "x", smax, D);
      if (!(shift_x(G0, Rational(1)) - G0 == s_of_x(G0, smax))) ++bad;
    }
    return Verdict{bad == 0, std::to_string(bad) + " mismatches over smax 0..4"};
  }});
  v.push_back({"series", "bernoulli-difference", [] {
    int bad = 0;
    for (int m = 0; m <= 12; ++m) {
      auto p = bernoulli_poly(m);
      for (int xi = -4; xi <= 4; ++xi) {
        Rational x = make_rational(xi, 3);
        Rational expect = m == 0 ? Rational(0) : m * pow(x, m - 1);
        if (eval_poly(p, x + 1) - eval_poly(p, x) != expect) ++bad;
      }
    }
    return Verdict{bad == 0, std::to_string(bad) + " mismatches for m <= 12"};
  }});
  v.push_back({"series", "exp-log-roundtrip", [] {
    auto vars = make_vars({"x", "y", "z"}, {1, 1, 2});
    int D = 8;
    using S = Series<Rational>;
    S x = S::variable(vars, D, "x"), y = S::variable(vars, D, "y"), z = S::variable(vars, D, "z");
    S f = x - y * Rational(3) + x * y * make_rational(1, 7) + z * z * make_rational(5, 2);
    S g = S::constant(vars, D, Rational(1)) + f;
    bool ok = log(exp(f)) == f && exp(log(g)) == g && g * inv(g) == S::constant(vars, D, Rational(1));
    return Verdict{ok, "weighted series, D = 8"};
  }});
  v.push_back({"series", "gamma-ratio-telescoping", [] {
    int bad = 0;
    Rational f = make_rational(2, 7);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        Rational shifted(1);
        for (int j = a; j < a + b; ++j) shifted *= -f - j;
        if (gamma_ratio(f, a + b) != gamma_ratio(f, a) * shifted) ++bad;
      }
    return Verdict{bad == 0, std::to_string(bad) + " mismatches"};
  }});
  return v;
}

inline std::vector<CheckFn> cone_suite(int D = 8) {
  std::vector<CheckFn> v;
  v.push_back({"cone", "picard-fuchs-c2z2", [D] {
    auto I = i_twisted(model_c2_zn(2), D);
    bool ok = true;
    for (int k : {0, 2, -2, 4}) ok = ok && pf_residual(2, {k}, I).is_zero();
    return Verdict{ok, "k in {0, 2, -2, 4}, D = " + std::to_string(D)};
  }});
  v.push_back({"cone", "picard-fuchs-c2z3", [D] {
    auto I = i_twisted(model_c2_zn(3), D);
    bool ok = true;
    for (auto k : std::vector<std::vector<int>>{{3, 0}, {1, 1}, {0, 3}, {2, -1}, {-1, 2}, {2, 2}})
      ok = ok && pf_residual(3, k, I).is_zero();
    return Verdict{ok, "6 relations, D = " + std::to_string(D)};
  }});
  v.push_back({"cone", "string-equation", [D] {
    bool ok = true;
    for (int n = 2; n <= 3; ++n) ok = ok && string_residual(i_twisted(model_c2_zn(n), D)).is_zero();
    return Verdict{ok, "n = 2, 3"};
  }});
  v.push_back({"cone", "inverse-mirror-map", [] {
    bool ok = true;
    for (int n = 2; n <= 4; ++n) {
      auto tau = mirror_map_c2zn(n, 6);
      ok = ok && closed_form_inverse_an(n, 6) == invert_series(tau, tau_vars(n));
    }
    return Verdict{ok, "closed form vs series inversion, n = 2..4, D = 6"};
  }});
  v.push_back({"cone", "potential-routes", [] {
    bool ok = true;
    for (int n = 2; n <= 3; ++n)
      ok = ok && potential_derivatives_c2zn(n, 6, Route::A) == potential_derivatives_c2zn(n, 6, Route::B);
    return Verdict{ok, "n = 2, 3, D = 6"};
  }});
  v.push_back({"cone", "quintic-j-normalization", [] {
    quintic_j_function(4);
    return Verdict{true, "z^0 part of J is t p"};
  }});
  return v;
}

inline std::vector<CheckFn> crepant_suite(const std::vector<int>& ns) {
  std::vector<CheckFn> v;
  for (int n : ns) {
    v.push_back({"crepant", "pairing-n" + std::to_string(n), [n] {
      auto r = pairing_preservation(n);
      return Verdict{r.ok, "exact Gram matrix"};
    }});
    v.push_back({"crepant", "root-identity-n" + std::to_string(n), [n] {
      auto r = root_identity_check(n, sample_points(n, 10, 0.1), 14);
      std::ostringstream os;
      os << "max residual " << r.maxResidual;
      return Verdict{r.pass, os.str()};
    }});
    v.push_back({"crepant", "continuation-n" + std::to_string(n), [n] {
      auto r = continuation_check(n, sample_points(n, 10, 0.1), 14);
      std::ostringstream os;
      os << "max residual " << r.maxResidual;
      return Verdict{r.pass, os.str()};
    }});
  }
  return v;
}

inline int default_threads() {
  if (const char* s = std::getenv("ORBGW_THREADS")) {
    int t = std::atoi(s);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// results come back in submission order regardless of thread count
inline std::vector<CheckResult> run_checks(const std::vector<CheckFn>& fs, int threads) {
  std::vector<CheckResult> out(fs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < fs.size();) out[i] = run_guarded(fs[i]);
  };
  int t = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, fs.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace orbgw
