#include "heunwell/json_io.hpp"

#include <cmath>
#include <string>

#include "heunwell/grid.hpp"

namespace heunwell {

nlohmann::json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(format_number(value, 15));
}

nlohmann::json to_json(const PotentialParams& p) {
  return {{"a", json_number(p.a)},   {"sigma", json_number(p.sigma)}, {"x0", json_number(p.x0)},
          {"V0", json_number(p.V0)}, {"V1", json_number(p.V1)},       {"variant", to_string(p.variant)},
          {"m", json_number(p.m)},   {"hbar", json_number(p.hbar)}};
}

nlohmann::json to_json(const HeunData& h) {
  nlohmann::json j;
  j["a1"] = json_number(h.a1);
  j["a2"] = json_number(h.a2);
  j["a3"] = json_number(h.a3);
  j["m1"] = h.m1;
  j["m2"] = h.m2;
  j["m3"] = h.m3;
  j["E"] = json_number(h.E);
  const auto put = [&j](const std::string& name, cplx v) {
    j[name + "_re"] = json_number(v.real());
    j[name + "_im"] = json_number(v.imag());
  };
  put("alpha0", h.alpha0);
  put("alpha1", h.alpha1);
  put("alpha2", h.alpha2);
  put("alpha3", h.alpha3);
  put("alpha", h.alpha);
  put("beta", h.beta);
  put("gamma", h.gamma);
  put("delta", h.delta);
  put("epsilon", h.epsilon);
  put("q", h.q);
  return j;
}

nlohmann::json to_json(const SpectrumResult& r) {
  nlohmann::json energies = nlohmann::json::array();
  for (double e : r.energies) energies.push_back(json_number(e));
  nlohmann::json j;
  j["energies"] = energies;
  j["node_count"] = r.node_count ? nlohmann::json(*r.node_count) : nlohmann::json(nullptr);
  j["bargmann"] = json_number(r.bargmann);
  j["calogero"] = json_number(r.calogero);
  j["chadan"] = json_number(r.chadan);
  j["small_a_cap"] = json_number(r.small_a_cap);
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace heunwell
