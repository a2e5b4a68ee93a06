#pragma once

#include "cyclotomic.hpp"
#include "mirror.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbgw {

using cplx = std::complex<double>;

// L^i_j = zeta^{2ij}(zeta^{-j} - zeta^j)/n for 1 <= i,j < n, row and column 0 the unit
inline Matrix<Cyc> l_matrix(int n) {
  if (n < 2) throw std::invalid_argument("l_matrix: n must be at least 2");
  int M = 2 * n;
  Matrix<Cyc> L(n, std::vector<Cyc>(n, Cyc(0L)));
  L[0][0] = Cyc(1L);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      L[i][j] = Cyc::zeta_pow(M, 2L * i * j) * (Cyc::zeta_pow(M, -j) - Cyc::zeta_pow(M, j)) * make_rational(1, n);
  return L;
}

struct PairingReport {
  bool ok = false;
  Matrix<RatFunc> gram;
  Matrix<RatFunc> expected;
};

// Gram matrix of L^dagger 1, L^dagger omega_1, ..., L^dagger omega_{n-1} in the twisted pairing
inline PairingReport pairing_preservation(int n) {
  auto m = model_c2_zn(n);
  auto L = l_matrix(n);
  std::vector<std::vector<Cyc>> v(n, std::vector<Cyc>(n, Cyc(0L)));
  v[0][0] = Cyc(1L);
  for (int i = 1; i < n; ++i)
    for (int k = 1; k < n; ++k) v[i][n - k] = L[i][k] * Rational(n);
  PairingReport rep;
  rep.gram.assign(n, std::vector<RatFunc>(n, RatFunc(0)));
  rep.expected.assign(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::map<std::string, std::pair<RatFunc, Cyc>> groups;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          if (m.pairing[p][q].is_zero() || v[a][p].is_zero() || v[b][q].is_zero()) continue;
          auto& g = groups.try_emplace(m.pairing[p][q].str(), m.pairing[p][q], Cyc(0L)).first->second;
          g.second += v[a][p] * v[b][q];
        }
      RatFunc s(0);
      for (auto& [key, g] : groups) s += g.first * RatFunc(g.second.to_rational());
      rep.gram[a][b] = s;
    }
  rep.expected[0][0] = m.pairing[0][0];
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      int d = std::abs(i - j);
      rep.expected[i][j] = RatFunc(d == 0 ? -2 : d == 1 ? 1 : 0);
    }
  rep.ok = rep.gram == rep.expected;
  return rep;
}

// t^0 = tau^0, t^i = -2 pi i/n + sum_j L^i_j tau^j
inline std::vector<cplx> affine_change(int n, const std::vector<cplx>& tau) {
  if (static_cast<int>(tau.size()) != n) throw std::invalid_argument("affine_change: wrong dimension");
  auto L = l_matrix(n);
  std::vector<cplx> t(n);
  t[0] = tau[0];
  for (int i = 1; i < n; ++i) {
    t[i] = cplx(0, -2 * std::numbers::pi / n);
    for (int j = 1; j < n; ++j) t[i] += L[i][j].to_complex() * tau[j];
  }
  return t;
}

// roots of the monic polynomial with coefficients c[0] + c[1] z + ... + z^deg
inline std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
  int d = static_cast<int>(c.size());
  if (d == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("poly_roots: eigenvalue solver failed");
  std::vector<cplx> r(d);
  for (int i = 0; i < d; ++i) r[i] = es.eigenvalues()[i];
  return r;
}

// monic coefficients (constant first) of prod (z - r_k)
inline std::vector<cplx> poly_from_roots(const std::vector<cplx>& r) {
  std::vector<cplx> p{1};
  for (auto& a : r) {
    std::vector<cplx> q(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= a * p[i];
    }
    p = std::move(q);
  }
  p.pop_back();
  return p;
}

struct RootTrack {
  std::vector<cplx> coeffs;
  std::vector<cplx> roots;
  std::vector<cplx> logs;
  int steps = 0;
};

struct TrackFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// follow labelled roots of coeffs(s), s from s0 to s1, continuing log branches
template <class F>
RootTrack track_roots(F coeffs, double s0, double s1, std::vector<cplx> roots, std::vector<cplx> logs,
                      int maxSteps = 200000) {
  std::size_t d = roots.size();
  double s = s0, h = (s1 - s0) / 64;
  RootTrack tr;
  while (s != s1) {
    if (tr.steps++ > maxSteps) throw TrackFailure("track_roots: too many steps");
    double t = (h > 0 ? std::min(s + h, s1) : std::max(s + h, s1));
    auto c = coeffs(t);
    auto cand = poly_roots(c);
    double sep = INFINITY;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) sep = std::min(sep, std::abs(cand[i] - cand[j]));
    std::vector<int> match(d, -1);
    std::vector<bool> used(d, false);
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      int best = -1;
      double bd = INFINITY;
      for (std::size_t j = 0; j < d; ++j) {
        double dist = std::abs(cand[j] - roots[i]);
        if (dist < bd) {
          bd = dist;
          best = static_cast<int>(j);
        }
      }
      if (used[best] || (d > 1 && bd >= sep / 2) || std::abs(cand[best] / roots[i] - 1.0) > 0.25) ok = false;
      else {
        used[best] = true;
        match[i] = best;
      }
    }
    if (!ok) {
      h /= 2;
      if (std::abs(h) < 1e-14) throw TrackFailure("track_roots: separation margin violated");
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) {
      cplx r = cand[match[i]];
      logs[i] += std::log(r / roots[i]);
      roots[i] = r;
    }
    s = t;
    h = std::abs(h * 1.5) > std::abs(s1 - s0) / 64 ? (s1 - s0) / 64 : h * 1.5;
  }
  tr.coeffs = coeffs(s1);
  tr.roots = roots;
  tr.logs = logs;
  return tr;
}

// W_X coefficients (constant first, monic omitted): 1, x_1, ..., x_{n-1}
inline std::vector<cplx> wx_coeffs(const std::vector<cplx>& x) {
  std::vector<cplx> c(x.size());
  c[0] = 1;
  for (std::size_t i = 1; i < x.size(); ++i) c[i] = x[i];
  return c;
}

// f^k(x) = tau^k(x) evaluated numerically, x_0 = 0
inline std::vector<cplx> flat_coordinates(const std::vector<Series<Rational>>& f, const std::vector<cplx>& x) {
  std::vector<cplx> out;
  for (auto& s : f) out.push_back(evaluate(s, x));
  return out;
}

// labels kappa_i -> zeta^{2i+1} at x = 0 with log = (2i+1) pi i/n
inline RootTrack track_from_origin(int n, const std::vector<cplx>& x, std::vector<cplx> logs0 = {}) {
  std::vector<cplx> roots(n), logs(n);
  for (int i = 0; i < n; ++i) {
    logs[i] = cplx(0, (2 * i + 1) * std::numbers::pi / n);
    roots[i] = std::exp(logs[i]);
  }
  if (!logs0.empty()) logs = logs0;
  auto c = [&](double s) {
    std::vector<cplx> y(x);
    for (auto& v : y) v *= s;
    return wx_coeffs(y);
  };
  return track_roots(c, 0.0, 1.0, roots, logs);
}

struct CheckReport {
  std::string check;
  int n = 0;
  int D = 0;
  int samples = 0;
  double maxResidual = 0;
  bool pass = false;
  std::vector<double> extra;
};

inline nlohmann::json report_json(const CheckReport& r) {
  return {{"check", r.check},       {"n", r.n},
          {"D", r.D},               {"samples", r.samples},
          {"maxResidual", r.maxResidual}, {"verdict", r.pass ? "pass" : "fail"}};
}

// deterministic sample points with |x_i| = radius, random phases; x_0 = 0
inline std::vector<std::vector<cplx>> sample_points(int n, int count, double radius, unsigned seed = 7) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> ph(0, 2 * std::numbers::pi), mag(0.5, 1.0);
  std::vector<std::vector<cplx>> pts;
  for (int s = 0; s < count; ++s) {
    std::vector<cplx> x(n, 0);
    for (int i = 1; i < n; ++i) x[i] = std::polar(radius * mag(gen), ph(gen));
    pts.push_back(x);
  }
  return pts;
}

inline double root_identity_residual(int n, const std::vector<Series<Rational>>& f, const std::vector<cplx>& x) {
  auto tr = track_from_origin(n, x);
  auto fx = flat_coordinates(f, x);
  double res = 0;
  for (int i = 0; i < n; ++i) {
    cplx rhs(0, (2 * i + 1) * std::numbers::pi / n);
    for (int k = 1; k < n; ++k) rhs += std::polar(1.0, (2 * i + 1) * k * std::numbers::pi / n) * fx[k] / double(n);
    res = std::max(res, std::abs(tr.logs[i] - rhs));
  }
  cplx sum = 0;
  for (auto& l : tr.logs) sum += l;
  res = std::max(res, std::abs(sum - cplx(0, n * std::numbers::pi)));
  return res;
}

inline CheckReport root_identity_check(int n, const std::vector<std::vector<cplx>>& pts, int D, double tol = 1e-8) {
  auto f = mirror_map_c2zn(n, D);
  CheckReport r{"roots", n, D, static_cast<int>(pts.size()), 0, false, {}};
  for (auto& x : pts) r.maxResidual = std::max(r.maxResidual, root_identity_residual(n, f, x));
  r.pass = r.maxResidual < tol;
  return r;
}

// y_i = x_{i-1} x_i^{-2} x_{i+1} with x_0 = x_n = 1
inline std::vector<cplx> x_to_y(const std::vector<cplx>& x) {
  int n = static_cast<int>(x.size());
  auto at = [&](int i) { return i == 0 || i == n ? cplx(1) : x[i]; };
  std::vector<cplx> y(n, 0);
  for (int i = 1; i < n; ++i) y[i] = at(i - 1) * at(i + 1) / (at(i) * at(i));
  return y;
}

// inverse of x_to_y through the Cartan inverse; the mu_n ambiguity is resolved towards ref
inline std::vector<cplx> y_to_x(const std::vector<cplx>& y, const std::vector<cplx>& ref) {
  int n = static_cast<int>(y.size());
  std::vector<cplx> ly(n, 0), x(n, 0);
  for (int i = 1; i < n; ++i) ly[i] = std::log(y[i]);
  // (C^{-1})_{ij} = min(i,j)(n - max(i,j))/n, log y = -C log x
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) x[i] -= double(std::min(i, j) * (n - std::max(i, j))) / n * ly[j];
  for (int i = 1; i < n; ++i) x[i] = std::exp(x[i]);
  std::vector<cplx> best;
  double bd = INFINITY;
  for (int c = 0; c < n; ++c) {
    std::vector<cplx> cand(n, 0);
    double d = 0;
    for (int i = 1; i < n; ++i) {
      cand[i] = x[i] * std::polar(1.0, 2 * std::numbers::pi * c * i / n);
      d = std::max(d, std::abs(cand[i] - ref[i]));
    }
    if (d < bd) {
      bd = d;
      best = cand;
    }
  }
  best[0] = ref[0];
  return best;
}

struct ContinuationPath {
  std::vector<cplx> logKappa;    // log kappa_i at x = 0 after both stages
  double startOffset = 0;        // max |g^i - Log y_i| at the start of stage 1
  double pathDeviation = 0;      // max distance of tracked roots from the explicit path roots
  double junction = 0;           // mismatch of kappa_i and 1/mu_i at x = (1, ..., 1)
};

// continue log mu_i from y near 0 to x = 0 along the two-stage path, pushed off the real
// parameter interval by e -> e + i delta sin(pi e) so that no two roots collide
inline ContinuationPath continue_two_stage(int n, double eps0 = 1e-2, double delta = 0.05) {
  const double pi = std::numbers::pi;
  // smallest root eps^{n-1} must stay well conditioned in the companion matrix
  double epsTrack = std::max(0.3, std::pow(1e-12, 2.0 / (n * (n - 1))));
  cplx rho = std::polar(1.0, 2 * pi / (n + 1));
  auto mu_path = [&](cplx e) {
    std::vector<cplx> r(n);
    cplx m0 = -1;
    for (int k = 1; k < n; ++k) {
      r[k] = std::pow(e, k) * std::pow(rho, k + 1);
      m0 -= r[k];
    }
    r[0] = m0;
    return r;
  };
  auto kappa_path = [&](cplx e) {
    std::vector<cplx> r(n);
    for (int k = 0; k < n; ++k)
      r[k] = std::exp(cplx(0, pi) * ((2.0 * k + 1) / n * e + 2.0 * (n - k) / (n + 1) * (1.0 - e)));
    return r;
  };
  auto bend1 = [&](double e) { return cplx(e, delta * std::sin(pi * (e - eps0) / (1 - eps0))); };
  auto bend2 = [&](double e) { return cplx(e, delta * std::sin(pi * e)); };
  ContinuationPath out;
  // initial branches: log mu_k = k log eps + 2 pi i (k+1)/(n+1), log mu_0 fixed by g^1 = Log y_1 + O(y)
  auto r0 = mu_path(eps0);
  std::vector<cplx> logs(n);
  for (int k = 1; k < n; ++k) logs[k] = cplx(k * std::log(eps0), 2 * pi * (k + 1) / (n + 1));
  auto c0 = poly_from_roots(r0);
  // coefficient of mu^{n-1-j} is y_1^j y_2^{j-1} ... y_j
  std::vector<cplx> y(n, 0);
  for (int j = 1; j < n; ++j) {
    cplx v = c0[n - 1 - j];
    for (int i = 1; i < j; ++i) v /= std::pow(y[i], j + 1 - i);
    y[j] = v;
  }
  cplx principal = std::log(r0[0]);
  double shift = std::round(std::imag(logs[1] - std::log(y[1]) - principal) / (2 * pi));
  logs[0] = principal + cplx(0, 2 * pi * shift);
  for (int i = 1; i < n; ++i)
    out.startOffset = std::max(out.startOffset, std::abs(logs[i] - logs[i - 1] - std::log(y[i])));
  auto check_path = [&](const std::vector<cplx>& got, const std::vector<cplx>& want) {
    for (int k = 0; k < n; ++k) out.pathDeviation = std::max(out.pathDeviation, std::abs(got[k] - want[k]));
  };
  // tiny roots are ill-conditioned for the companion matrix; follow the explicit roots up to epsTrack
  const int pre = 4096;
  for (int s = 1; s <= pre; ++s) {
    double a = eps0 + (epsTrack - eps0) * (s - 1) / pre, b = eps0 + (epsTrack - eps0) * s / pre;
    auto ra = mu_path(bend1(a)), rb = mu_path(bend1(b));
    for (int k = 0; k < n; ++k) logs[k] += std::log(rb[k] / ra[k]);
  }
  auto tr1 = track_roots([&](double e) { return poly_from_roots(mu_path(bend1(e))); }, epsTrack, 1.0,
                         mu_path(bend1(epsTrack)), logs);
  check_path(tr1.roots, mu_path(1.0));
  // junction: y = (1, ..., 1) is x = (1, ..., 1); kappa = 1/(x_1 mu)
  std::vector<cplx> kap(n), klog(n);
  for (int k = 0; k < n; ++k) {
    kap[k] = 1.0 / tr1.roots[k];
    klog[k] = -tr1.logs[k];
  }
  std::vector<cplx> ones(n, 1);
  auto wx1 = wx_coeffs(ones);
  auto k0 = kappa_path(0.0);
  auto start2 = poly_from_roots(k0);
  for (int k = 0; k < n; ++k) {
    out.junction = std::max(out.junction, std::abs(kap[k] - k0[k]));
    out.junction = std::max(out.junction, std::abs(start2[k] - wx1[k]));
  }
  auto tr2 = track_roots([&](double e) { return poly_from_roots(kappa_path(bend2(e))); }, 0.0, 1.0, kap, klog);
  check_path(tr2.roots, kappa_path(1.0));
  out.logKappa = tr2.logs;
  return out;
}

// g^i = log kappa_{i-1} - log kappa_i against -2 pi i/n + sum_j L^i_j f^j(x)
inline CheckReport continuation_check(int n, const std::vector<std::vector<cplx>>& pts, int D, double tol = 1e-6) {
  const double pi = std::numbers::pi;
  auto path = continue_two_stage(n);
  auto f = mirror_map_c2zn(n, D);
  auto L = l_matrix(n);
  CheckReport r{"continuation", n, D, static_cast<int>(pts.size()), 0, false, {}};
  double constants = 0;
  for (int i = 1; i < n; ++i)
    constants = std::max(constants, std::abs(path.logKappa[i - 1] - path.logKappa[i] - cplx(0, -2 * pi / n)));
  r.maxResidual = std::max({constants, path.pathDeviation, path.junction});
  for (auto& x : pts) {
    auto back = y_to_x(x_to_y(x), x);
    double rt = 0;
    for (int i = 1; i < n; ++i) rt = std::max(rt, std::abs(back[i] - x[i]));
    auto tr = track_from_origin(n, x, path.logKappa);
    auto fx = flat_coordinates(f, x);
    double res = rt;
    for (int i = 1; i < n; ++i) {
      cplx rhs(0, -2 * pi / n);
      for (int j = 1; j < n; ++j) rhs += L[i][j].to_complex() * fx[j];
      res = std::max(res, std::abs(tr.logs[i - 1] - tr.logs[i] - rhs));
    }
    r.maxResidual = std::max(r.maxResidual, res);
  }
  r.extra = {constants, path.startOffset, path.pathDeviation, path.junction};
  // the start offset is O(eps0); a wrong branch would show up as a multiple of 2 pi
  r.pass = r.maxResidual < tol && path.startOffset < 0.5;
  return r;
}

}  // namespace orbgw
