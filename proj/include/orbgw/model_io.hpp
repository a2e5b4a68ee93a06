#pragma once

#include "model.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace orbgw {

using json = nlohmann::json;

namespace detail {

inline json rat_matrix(const Matrix<Rational>& m) {
  json a = json::array();
  for (auto& row : m) {
    json r = json::array();
    for (auto& x : row) r.push_back(to_string(x));
    a.push_back(r);
  }
  return a;
}

inline Rational rat_value(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument(where + ": expected a rational string");
}

inline Matrix<Rational> rat_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of arrays");
  Matrix<Rational> m;
  for (auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument(where + ": expected an array of arrays");
    std::vector<Rational> r;
    for (auto& x : row) r.push_back(rat_value(x, where));
    m.push_back(r);
  }
  return m;
}

inline const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("model json: missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline json model_to_json(const OrbifoldModel& m) {
  json j;
  j["name"] = m.name;
  json inertia = json::array();
  for (int i = 0; i < m.N; ++i) {
    json c;
    c["age"] = to_string(m.ages[i]);
    c["component"] = m.component[i];
    json f = json::array();
    for (auto& x : m.fWeights[i]) f.push_back(to_string(x));
    c["fWeights"] = f;
    inertia.push_back(c);
  }
  j["inertia"] = inertia;
  j["involution"] = m.involution;
  j["bundleRank"] = m.r;
  j["twist"] = twist_name(m.twist);
  j["novikovRank"] = m.novikovRank;
  j["degreeScale"] = to_string(m.degreeScale);
  j["chernDegrees"] = detail::rat_matrix(m.chernDegrees);
  j["chernClasses"] = detail::rat_matrix(m.chernClasses);
  json p = json::array();
  for (auto& row : m.pairing) {
    json r = json::array();
    for (auto& x : row) r.push_back(x.str());
    p.push_back(r);
  }
  j["pairing"] = p;
  if (m.cyclicOrder) {
    j["cyclicOrder"] = m.cyclicOrder;
    j["weights"] = m.weights;
  }
  if (m.ring) {
    json t = json::array();
    for (auto& a : *m.ring) t.push_back(detail::rat_matrix(a));
    j["ring"] = t;
  }
  return j;
}

inline OrbifoldModel load_model(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model json: expected an object");
  OrbifoldModel m;
  std::string name = detail::field(j, "name").get<std::string>();
  Twist twist = parse_twist(detail::field(j, "twist").get<std::string>());
  if (j.contains("weights") && !j.contains("inertia")) {
    int n = detail::field(j, "cyclicOrder").get<int>();
    m = model_cyclic(name, n, j.at("weights").get<std::vector<int>>(), twist);
  } else {
    m.name = name;
    m.twist = twist;
    const json& inertia = detail::field(j, "inertia");
    if (!inertia.is_array() || inertia.empty()) throw std::invalid_argument("model json: 'inertia' must be a non-empty array");
    m.N = static_cast<int>(inertia.size());
    for (int i = 0; i < m.N; ++i) {
      const json& c = inertia[i];
      if (!c.is_object()) throw std::invalid_argument("model json: inertia entries must be objects");
      m.ages.push_back(detail::rat_value(detail::field(c, "age"), "age"));
      m.component.push_back(c.value("component", i));
      std::vector<Rational> f;
      const json& fw = detail::field(c, "fWeights");
      if (!fw.is_array()) throw std::invalid_argument("model json: fWeights must be an array");
      for (auto& x : fw) f.push_back(detail::rat_value(x, "fWeights"));
      m.fWeights.push_back(f);
    }
    m.r = m.fWeights.empty() ? 0 : static_cast<int>(m.fWeights[0].size());
    if (j.contains("bundleRank") && j.at("bundleRank").get<int>() != m.r)
      throw std::invalid_argument("model json: bundleRank disagrees with fWeights");
    m.involution = detail::field(j, "involution").get<std::vector<int>>();
    m.novikovRank = j.value("novikovRank", 0);
    m.chernDegrees = j.contains("chernDegrees") ? detail::rat_matrix(j.at("chernDegrees"), "chernDegrees")
                                                : Matrix<Rational>(m.r, std::vector<Rational>{});
    m.chernClasses = j.contains("chernClasses")
                         ? detail::rat_matrix(j.at("chernClasses"), "chernClasses")
                         : Matrix<Rational>(m.r, std::vector<Rational>(m.N, Rational(0)));
    if (j.contains("cyclicOrder")) {
      m.cyclicOrder = j.at("cyclicOrder").get<int>();
      m.weights = j.value("weights", std::vector<int>{});
    }
  }
  if (j.contains("degreeScale")) m.degreeScale = detail::rat_value(j.at("degreeScale"), "degreeScale");
  if (j.contains("pairing")) {
    const json& p = j.at("pairing");
    if (!p.is_array()) throw std::invalid_argument("model json: pairing must be an array");
    m.pairing.clear();
    for (auto& row : p) {
      if (!row.is_array()) throw std::invalid_argument("model json: pairing rows must be arrays");
      std::vector<RatFunc> r;
      for (auto& x : row) r.push_back(x.is_string() ? RatFunc::parse(x.get<std::string>()) : RatFunc(x.get<long>()));
      m.pairing.push_back(r);
    }
  } else if (!m.cyclicOrder) {
    throw std::invalid_argument("model json: missing field 'pairing'");
  }
  if (j.contains("ring")) {
    std::vector<Matrix<Rational>> t;
    for (auto& a : j.at("ring")) t.push_back(detail::rat_matrix(a, "ring"));
    m.ring = t;
  }
  validate_model(m);
  return m;
}

inline OrbifoldModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("model file " + path + ": " + e.what());
  }
  return load_model(j);
}

}  // namespace orbgw
