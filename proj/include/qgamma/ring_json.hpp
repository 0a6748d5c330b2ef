#pragma once

// JSON round trip for cohomology rings:
// {name, dimension, basis[{label,degree}], cup_table[[i,j,k,"p/q"]...],
//  integral[], c1[], chTF[], index}. Rationals are written as strings.

#include "qgamma/ring.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace qgamma {

inline nlohmann::json rationals_to_json(const std::vector<Rational>& v) {
  auto out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

inline std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) {
    Rational q(x.is_string() ? x.get<std::string>() : x.dump(), 10);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

inline nlohmann::json ring_to_json(const CohomologyRing& R) {
  nlohmann::json j;
  j["name"] = R.name;
  j["dimension"] = R.dimension;
  auto basis = nlohmann::json::array();
  for (const auto& b : R.basis) basis.push_back({{"label", b.label}, {"degree", b.degree}});
  j["basis"] = basis;
  auto table = nlohmann::json::array();
  for (std::size_t i = 0; i < R.cup_table.size(); ++i)
    for (std::size_t k = 0; k < R.cup_table[i].size(); ++k)
      for (const auto& [idx, c] : R.cup_table[i][k]) table.push_back({i, k, idx, c.get_str()});
  j["cup_table"] = table;
  j["integral"] = rationals_to_json(R.integral);
  j["c1"] = rationals_to_json(R.c1);
  j["chTF"] = rationals_to_json(R.chTF);
  j["index"] = R.fano_index;
  return j;
}

inline RingPtr ring_from_json(const nlohmann::json& j) {
  CohomologyRing R;
  R.name = j.at("name").get<std::string>();
  R.dimension = j.at("dimension").get<int>();
  for (const auto& b : j.at("basis")) R.basis.push_back({b.at("label").get<std::string>(), b.at("degree").get<int>()});
  const auto n = R.basis.size();
  R.cup_table.assign(n, std::vector<SparseTerms>(n));
  for (const auto& e : j.at("cup_table")) {
    const auto i = e.at(0).get<std::size_t>();
    const auto k = e.at(1).get<std::size_t>();
    if (i >= n || k >= n) throw std::invalid_argument("cup_table index out of range");
    Rational c(e.at(3).get<std::string>(), 10);
    c.canonicalize();
    R.cup_table[i][k].emplace_back(e.at(2).get<int>(), c);
  }
  R.integral = rationals_from_json(j.at("integral"));
  R.c1 = rationals_from_json(j.at("c1"));
  R.chTF = rationals_from_json(j.at("chTF"));
  R.fano_index = j.at("index").get<int>();
  if (R.integral.size() != n || R.c1.size() != n || R.chTF.size() != n)
    throw std::invalid_argument("ring vectors do not match basis size");
  return std::make_shared<const CohomologyRing>(std::move(R));
}

}  // namespace qgamma
