#include <orbgw/invariants.hpp>
#include <orbgw/model_io.hpp>
#include <orbgw/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>
#include <sstream>

using namespace orbgw;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json exponent_json(const Exponent& e, std::size_t nv) {
  json a = json::array();
  for (std::size_t i = 0; i < nv; ++i) a.push_back(static_cast<int>(e[i]));
  return a;
}

template <class C>
std::string coeff_str(const C& c) {
  if constexpr (std::is_same_v<C, Rational>)
    return to_string(c);
  else
    return c.str();
}

template <class C>
json series_json(const Series<C>& s) {
  json terms = json::array();
  std::size_t nv = s.vars()->size();
  for (auto& [e, c] : s.terms()) terms.push_back({{"exponent", exponent_json(e, nv)}, {"coeff", coeff_str(c)}});
  json vars = json::array();
  for (std::size_t i = 0; i < nv; ++i) vars.push_back(s.vars()->name(i));
  return {{"vars", vars}, {"truncation", s.truncation()}, {"terms", terms}};
}

std::string decimal(const std::string& exact) {
  try {
    std::ostringstream os;
    os.precision(17);
    os << parse_rational(exact).get_d();
    return os.str();
  } catch (const std::exception&) {
    return "";
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

template <class C>
void series_csv(std::ostream& os, const std::string& label, const Series<C>& s) {
  for (auto& [e, c] : s.terms()) {
    std::string ex;
    for (std::size_t i = 0; i < s.vars()->size(); ++i) ex += (i ? " " : "") + std::to_string(e[i]);
    std::string v = coeff_str(c);
    os << label << "," << ex << "," << csv_quote(v) << "," << decimal(v) << "\n";
  }
}

void emit(const json& j, const std::string& format, const std::function<void(std::ostream&)>& text,
          const std::function<void(std::ostream&)>& csv) {
  std::ostringstream os;
  if (format == "json") {
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << "# decimal column is a lossy rendering of the exact value\n";
    csv(os);
  } else {
    text(os);
  }
  std::cout << os.str();
}

int cmd_potential_c2zn(int n, int D, const std::string& format, int threads) {
  if (n < 2 || n > 12) throw UsageError("--n must be between 2 and 12");
  if (D < 1 || D > 40) throw UsageError("--degree must be between 1 and 40");
  auto x = closed_form_inverse_an(n, D);
  std::vector<Series<RatFunc>> a, b;
  if (threads > 1) {
    auto fb = std::async(std::launch::async, [&] { return potential_derivatives_c2zn(n, D, Route::B, &x); });
    a = potential_derivatives_c2zn(n, D, Route::A, &x);
    b = fb.get();
  } else {
    a = potential_derivatives_c2zn(n, D, Route::A, &x);
    b = potential_derivatives_c2zn(n, D, Route::B, &x);
  }
  for (int r = 0; r < n; ++r)
    if (a[r] != b[r]) throw ConsistencyError("route mismatch in dF/dtau^" + std::to_string(r));
  auto tv = tau_vars(n);
  std::vector<Series<Rational>> g;
  for (int r = 1; r < n; ++r) g.push_back(compose(dg_c2zn(n, r, D), x, tv, D));
  json j;
  j["model"] = "c2zn";
  j["n"] = n;
  j["degree"] = D;
  for (int r = 0; r < n; ++r) j["gradient"].push_back({{"r", r}, {"series", series_json(a[r])}});
  for (int i = 0; i < n; ++i) j["inverseMirrorMap"].push_back({{"i", i}, {"series", series_json(x[i])}});
  for (int r = 1; r < n; ++r) j["gGradient"].push_back({{"r", r}, {"series", series_json(g[r - 1])}});
  Series<Rational> third;
  if (n == 2) {
    third = g[0].diff(1).diff(1);
    j["gThirdDerivative"] = series_json(third);
  }
  emit(
      j, format,
      [&](std::ostream& os) {
        os << "[C^2/Z_" << n << "], truncation degree " << D << "\n";
        for (int i = 0; i < n; ++i) os << "x" << i << " = " << x[i].str() << "\n";
        for (int r = 0; r < n; ++r) os << "dF/dtau" << r << " = " << a[r].str() << "\n";
        for (int r = 1; r < n; ++r) os << "dG/dtau" << r << " = " << g[r - 1].str() << "\n";
        if (n == 2) os << "d^3G/dtau1^3 = " << third.str() << "\n";
        os << "routes A and B agree\n";
      },
      [&](std::ostream& os) {
        os << "series,exponent,exact,decimal\n";
        for (int i = 0; i < n; ++i) series_csv(os, "x" + std::to_string(i), x[i]);
        for (int r = 0; r < n; ++r) series_csv(os, "dF/dtau" + std::to_string(r), a[r]);
        for (int r = 1; r < n; ++r) series_csv(os, "dG/dtau" + std::to_string(r), g[r - 1]);
        if (n == 2) series_csv(os, "d3G", third);
      });
  return 0;
}

int cmd_potential_c3z3(int kmax, int D, const std::string& format) {
  if (kmax < 1 || kmax > 12) throw UsageError("--kmax must be between 1 and 12");
  if (D == 0) D = 3 * kmax;
  if (D < 3 * kmax - 1 || D > 60) throw UsageError("--degree must lie in [3 kmax - 1, 60]");
  auto N = invariants_c3z3(kmax, D);
  auto tv = make_vars({"tau1"});
  auto x = invert_series(std::vector<Series<Rational>>{mirror_map_c3z3(D)}, tv)[0];
  json j;
  j["model"] = "c3z3";
  j["kmax"] = kmax;
  j["degree"] = D;
  for (int k = 1; k <= kmax; ++k) j["table"].push_back({{"k", k}, {"N", to_string(N[k - 1])}});
  j["inverseMirrorMap"] = series_json(x);
  emit(
      j, format,
      [&](std::ostream& os) {
        os << "[C^3/Z_3], truncation degree " << D << "\n";
        os << "x1 = " << x.str() << "\n";
        os << "k\tN_{0,k}\n";
        for (int k = 1; k <= kmax; ++k) os << k << "\t" << N[k - 1] << "\n";
      },
      [&](std::ostream& os) {
        os << "k,exact,decimal\n";
        for (int k = 1; k <= kmax; ++k) {
          std::string v = to_string(N[k - 1]);
          os << k << "," << v << "," << decimal(v) << "\n";
        }
      });
  return 0;
}

int cmd_quintic(const std::string& dmaxStr, bool limit, bool descendants, const std::string& format) {
  Rational dmax;
  try {
    dmax = parse_rational(dmaxStr);
  } catch (const std::exception&) {
    throw UsageError("--dmax must be a rational number such as 2 or 3/2");
  }
  Rational d2 = 2 * dmax;
  if (!is_integer(d2) || dmax < 0 || dmax > 6) throw UsageError("--dmax must be a multiple of 1/2 in [0, 6]");
  int D = static_cast<int>(floor_long(d2));
  std::vector<Correlator> cs;
  if (D > 0) cs = extract_one_point(quintic_j_function(D), model_quintic_ambient());
  if (!descendants) std::erase_if(cs, [](const Correlator& c) { return c.insertions[0].psi != 0; });
  auto m = model_quintic_ambient();
  json j;
  j["model"] = "quintic";
  j["dmax"] = to_string(dmax);
  j["invariants"] = json::array();
  std::vector<std::string> lim;
  for (auto& c : cs) {
    json row{{"label", correlator_label(c)},
             {"basis", c.insertions[0].basis},
             {"psi", c.insertions[0].psi},
             {"degree", to_string(c.degree)},
             {"value", c.value.str()}};
    lim.push_back(to_string(non_equivariant_limit(c, m).value.eval_zero()));
    if (limit) row["limit"] = lim.back();
    j["invariants"].push_back(row);
  }
  emit(
      j, format,
      [&](std::ostream& os) {
        os << "invariant\tvalue" << (limit ? "\tlimit" : "") << "\n";
        for (std::size_t i = 0; i < cs.size(); ++i)
          os << correlator_label(cs[i]) << "\t" << cs[i].value.str() << (limit ? "\t" + lim[i] : "") << "\n";
      },
      [&](std::ostream& os) {
        os << "basis,psi,degree,value" << (limit ? ",limit,limit_decimal" : "") << "\n";
        for (std::size_t i = 0; i < cs.size(); ++i) {
          auto& c = cs[i];
          os << c.insertions[0].basis << "," << c.insertions[0].psi << "," << to_string(c.degree) << ","
             << csv_quote(c.value.str());
          if (limit) os << "," << lim[i] << "," << decimal(lim[i]);
          os << "\n";
        }
      });
  return 0;
}

int cmd_verify(const std::string& suite, int n, const std::string& format, int threads) {
  std::vector<int> ns{2, 3, 4};
  if (n) {
    if (n < 2 || n > 9) throw UsageError("--n must be between 2 and 9");
    ns = {n};
  }
  std::vector<CheckFn> fs;
  auto append = [&](std::vector<CheckFn> v) { fs.insert(fs.end(), v.begin(), v.end()); };
  if (suite == "series" || suite == "all") append(series_suite());
  if (suite == "cone" || suite == "all") append(cone_suite());
  if (suite == "crepant" || suite == "all") append(crepant_suite(ns));
  auto res = run_checks(fs, threads);
  int passed = 0;
  for (auto& r : res) passed += r.pass;
  json j;
  j["suite"] = suite;
  j["passed"] = passed;
  j["total"] = res.size();
  j["checks"] = json::array();
  for (auto& r : res)
    j["checks"].push_back({{"suite", r.suite}, {"name", r.name}, {"verdict", r.pass ? "pass" : "fail"}, {"detail", r.detail}});
  emit(
      j, format,
      [&](std::ostream& os) {
        for (auto& r : res) os << (r.pass ? "PASS " : "FAIL ") << r.suite << "/" << r.name << ": " << r.detail << "\n";
        os << "passed " << passed << " of " << res.size() << "\n";
      },
      [&](std::ostream& os) {
        os << "suite,name,verdict,detail\n";
        for (auto& r : res) os << r.suite << "," << r.name << "," << (r.pass ? "pass" : "fail") << "," << csv_quote(r.detail) << "\n";
      });
  return passed == static_cast<int>(res.size()) ? 0 : 1;
}

int cmd_model(const std::string& path) {
  OrbifoldModel m;
  try {
    m = load_model_file(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << model_to_json(m).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-zero twisted orbifold Gromov-Witten invariants in exact arithmetic"};
  app.require_subcommand(1);
  std::string format = "text";
  auto fmt = CLI::IsMember({"text", "json", "csv"});

  auto* pot = app.add_subcommand("potential", "gradient of the genus-zero potential");
  pot->require_subcommand(1);
  int n = 2, degree = 10, kmax = 4, c3degree = 0;
  auto* c2 = pot->add_subcommand("c2zn", "[C^2/Z_n] with the inverse Euler twist");
  c2->add_option("--n", n, "cyclic order")->required();
  c2->add_option("--degree", degree, "truncation degree");
  c2->add_option("--format", format)->check(fmt);
  auto* c3 = pot->add_subcommand("c3z3", "[C^3/Z_3] on the locus x0 = x2 = 0");
  c3->add_option("--kmax", kmax, "largest k in the N_{0,k} table");
  c3->add_option("--degree", c3degree, "truncation degree (default 3 kmax)");
  c3->add_option("--format", format)->check(fmt);

  auto* qu = app.add_subcommand("quintic", "one-point invariants of the quintic in P(1,1,1,1,2)");
  std::string dmax = "2";
  bool limit = false, descendants = false;
  qu->add_option("--dmax", dmax, "largest degree, a multiple of 1/2");
  qu->add_flag("--limit", limit, "add the non-equivariant limit column");
  qu->add_flag("--descendants", descendants, "include psi-class insertions");
  qu->add_option("--format", format)->check(fmt);

  auto* ve = app.add_subcommand("verify", "run property suites");
  std::string suite = "all";
  int vn = 0;
  ve->add_option("--suite", suite)->check(CLI::IsMember({"series", "cone", "crepant", "all"}));
  ve->add_option("--n", vn, "cyclic order for the crepant suite");
  ve->add_option("--format", format)->check(fmt);

  auto* mo = app.add_subcommand("model", "load, validate and print a model file");
  std::string path;
  mo->add_option("--model", path, "model JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int threads = default_threads();
  try {
    if (*pot) {
      if (*c2) return cmd_potential_c2zn(n, degree, format, threads);
      return cmd_potential_c3z3(kmax, c3degree, format);
    }
    if (*qu) return cmd_quintic(dmax, limit, descendants, format);
    if (*ve) return cmd_verify(suite, vn, format, threads);
    if (*mo) return cmd_model(path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
