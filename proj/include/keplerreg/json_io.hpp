#pragma once

#include <cstdio>
#include <string>

#include "json.hpp"
#include "keplerreg/ks_map.hpp"
#include "keplerreg/quantum.hpp"

namespace keplerreg {

/// 17-significant-digit decimal formatting: doubles round-trip bit-exactly
/// and reports are byte-stable across runs.
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON numbers are stored as doubles; nlohmann emits the shortest exact
/// round-trip decimal form. Text/CSV paths use fmt17.
inline nlohmann::ordered_json vec3_json(const Vec3& v) {
  return nlohmann::ordered_json::array({v[0], v[1], v[2]});
}
inline nlohmann::ordered_json vec4_json(const Vec4& v) {
  return nlohmann::ordered_json::array({v[0], v[1], v[2], v[3]});
}

inline nlohmann::ordered_json to_json(const KeplerState& s) {
  nlohmann::ordered_json j;
  j["X"] = vec3_json(s.X);
  j["Y"] = vec3_json(s.Y);
  j["m"] = s.m;
  j["gamma"] = s.gamma;
  j["k"] = s.k;
  return j;
}

inline KeplerState kepler_state_from_json(const nlohmann::json& j) {
  KeplerState s;
  for (int k = 0; k < 3; ++k) {
    s.X[k] = j.at("X").at(k).get<double>();
    s.Y[k] = j.at("Y").at(k).get<double>();
  }
  s.m = j.at("m").get<double>();
  s.gamma = j.at("gamma").get<double>();
  s.k = j.value("k", 1.0);
  if (!(s.m > 0.0) || !(s.gamma > 0.0) || !(s.k > 0.0))
    throw std::invalid_argument("state: m, gamma, k must be positive");
  if (norm(s.X) <= 0.0)
    throw std::invalid_argument("state: |X| must be positive");
  return s;
}

inline nlohmann::ordered_json to_json(const MomentumMapValue& mm) {
  nlohmann::ordered_json j;
  j["I"] = mm.I;
  j["J"] = mm.J;
  j["M"] = vec3_json(mm.M);
  j["N"] = vec3_json(mm.N);
  j["Q"] = vec4_json(mm.Q);
  j["P"] = vec4_json(mm.P);
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<SpectrumLine>& lines) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& l : lines) {
    nlohmann::ordered_json j;
    j["n"] = l.n;
    j["energy"] = l.energy;
    j["degeneracy"] = l.degeneracy;
    j["truncation_complete"] = l.truncation_complete;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace keplerreg
