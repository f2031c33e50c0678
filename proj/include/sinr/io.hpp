#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sinr/affectance.hpp"
#include "sinr/links.hpp"
#include "sinr/schedulers.hpp"

namespace sinr {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok)
      throw parse_error(std::string(where) + ": unknown field '" + it.key() +
                        "'");
  }
}

inline double require_number(const json& obj, const char* where,
                             const char* field) {
  if (!obj.contains(field))
    throw parse_error(std::string(where) + ": missing field '" + field + "'");
  const json& v = obj.at(field);
  if (!v.is_number())
    throw parse_error(std::string(where) + "." + field + ": expected number");
  return v.get<double>();
}

inline BigInt parse_exact_coord(const json& v, const std::string& where) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_integer())
    return BigInt(v.get<long long>());
  else
    throw parse_error(where + ": log2 precision needs integer coordinates");
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw parse_error(where + ": malformed integer '" + s + "'");
  }
}

}  // namespace detail

inline json instance_to_json(const Instance& inst) {
  json j;
  j["alpha"] = inst.fading.alpha;
  j["beta"] = inst.beta;
  j["noise"] = inst.noise;
  j["mode"] = to_string(inst.mode);
  j["metric"] = {{"dim", inst.fading.metric.dim},
                 {"C", inst.fading.metric.packing_constant}};
  j["precision"] = to_string(inst.precision);
  json links = json::array();
  for (const auto& l : inst.links) {
    json jl;
    jl["id"] = l.id;
    if (inst.precision == Precision::log2) {
      jl["s"] = json::array({l.s_exact.str()});
      jl["r"] = json::array({l.r_exact.str()});
    } else {
      jl["s"] = l.s;
      jl["r"] = l.r;
    }
    jl["weight"] = l.weight;
    links.push_back(std::move(jl));
  }
  j["links"] = std::move(links);
  return j;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("instance: expected JSON object");
  detail::reject_unknown(
      j, "instance",
      {"alpha", "beta", "noise", "mode", "metric", "precision", "links"});
  Instance inst;
  inst.fading.alpha = detail::require_number(j, "instance", "alpha");
  inst.beta = detail::require_number(j, "instance", "beta");
  inst.noise = j.contains("noise") ? detail::require_number(j, "instance", "noise") : 0.0;
  const std::string mode = j.value("mode", "uni");
  if (mode == "uni")
    inst.mode = Mode::unidirectional;
  else if (mode == "bi")
    inst.mode = Mode::bidirectional;
  else
    throw parse_error("instance.mode: expected \"uni\" or \"bi\"");
  if (!j.contains("metric") || !j.at("metric").is_object())
    throw parse_error("instance.metric: expected object");
  const json& m = j.at("metric");
  detail::reject_unknown(m, "instance.metric", {"dim", "C"});
  inst.fading.metric.dim = static_cast<int>(detail::require_number(m, "metric", "dim"));
  inst.fading.metric.packing_constant = detail::require_number(m, "metric", "C");
  const std::string prec = j.value("precision", "float");
  if (prec == "float")
    inst.precision = Precision::floating;
  else if (prec == "log2")
    inst.precision = Precision::log2;
  else
    throw parse_error("instance.precision: expected \"float\" or \"log2\"");
  if (!j.contains("links") || !j.at("links").is_array())
    throw parse_error("instance.links: expected array");
  int idx = 0;
  for (const json& jl : j.at("links")) {
    const std::string where = "instance.links[" + std::to_string(idx++) + "]";
    if (!jl.is_object()) throw parse_error(where + ": expected object");
    detail::reject_unknown(jl, where.c_str(), {"id", "s", "r", "weight"});
    Link l;
    l.id = static_cast<int>(detail::require_number(jl, where.c_str(), "id"));
    for (const char* f : {"s", "r"}) {
      if (!jl.contains(f) || !jl.at(f).is_array())
        throw parse_error(where + "." + f + ": expected coordinate array");
      const json& arr = jl.at(f);
      if (inst.precision == Precision::log2) {
        if (arr.size() != 1)
          throw parse_error(where + "." + f + ": log2 precision is 1-D");
        BigInt c = detail::parse_exact_coord(arr[0], where + "." + f);
        (f[0] == 's' ? l.s_exact : l.r_exact) = std::move(c);
      } else {
        std::vector<double> coords;
        for (const json& c : arr) {
          if (!c.is_number())
            throw parse_error(where + "." + f + ": expected number");
          coords.push_back(c.get<double>());
        }
        (f[0] == 's' ? l.s : l.r) = std::move(coords);
      }
    }
    l.weight = jl.contains("weight")
                   ? detail::require_number(jl, where.c_str(), "weight")
                   : 1.0;
    inst.links.push_back(std::move(l));
  }
  try {
    inst.validate();
  } catch (const error& e) {
    throw parse_error(std::string("instance: ") + e.what());
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("instance: invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline json power_to_json(const PowerAssignment& P) {
  return {{"gamma", P.gamma}, {"delta", P.delta}, {"scale", P.scale}};
}

inline PowerAssignment power_from_json(const json& j, const char* where) {
  if (!j.is_object()) throw parse_error(std::string(where) + ": expected object");
  detail::reject_unknown(j, where, {"gamma", "delta", "scale"});
  PowerAssignment P;
  P.gamma = detail::require_number(j, where, "gamma");
  P.delta = detail::require_number(j, where, "delta");
  P.scale = detail::require_number(j, where, "scale");
  return P;
}

/// Serialized schedule: algorithm, parameters, certification level, slots of
/// link ids, and per-slot max affectance diagnostics.
inline json schedule_to_json(const Instance& inst, const Schedule& sched) {
  json j;
  j["algorithm"] = sched.algorithm;
  j["params"] = {{"power", power_to_json(sched.power)},
                 {"mode", to_string(sched.mode)}};
  j["p_certified"] = sched.p_certified;
  json slots = json::array();
  json diag = json::array();
  for (const auto& slot : sched.slots) {
    json ids = json::array();
    for (int v : slot) ids.push_back(inst.links[v].id);
    slots.push_back(std::move(ids));
    double mx = 0;
    for (int v : slot)
      mx = std::max(mx, affectance_set_log(inst, slot, v, sched.power).to_double());
    diag.push_back(mx);
  }
  j["slots"] = std::move(slots);
  j["diagnostics"] = {{"slot_max_affectance", std::move(diag)}};
  return j;
}

inline std::string serialize_schedule(const Instance& inst,
                                      const Schedule& sched) {
  return schedule_to_json(inst, sched).dump(2) + "\n";
}

inline Schedule parse_schedule(const std::string& text, const Instance& inst) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("schedule: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("schedule: expected JSON object");
  detail::reject_unknown(j, "schedule",
                         {"algorithm", "params", "p_certified", "slots",
                          "diagnostics"});
  Schedule sched;
  sched.algorithm = j.value("algorithm", "unknown");
  if (!j.contains("params") || !j.at("params").is_object())
    throw parse_error("schedule.params: expected object");
  const json& params = j.at("params");
  detail::reject_unknown(params, "schedule.params", {"power", "mode", "seed", "p"});
  if (!params.contains("power"))
    throw parse_error("schedule.params: missing power");
  sched.power = power_from_json(params.at("power"), "schedule.params.power");
  const std::string mode = params.value("mode", "uni");
  sched.mode = mode == "bi" ? Mode::bidirectional : Mode::unidirectional;
  sched.p_certified = detail::require_number(j, "schedule", "p_certified");
  if (!j.contains("slots") || !j.at("slots").is_array())
    throw parse_error("schedule.slots: expected array");
  for (const json& js : j.at("slots")) {
    if (!js.is_array()) throw parse_error("schedule.slots: expected arrays of ids");
    std::vector<int> slot;
    for (const json& id : js) {
      if (!id.is_number_integer())
        throw parse_error("schedule.slots: expected integer link ids");
      slot.push_back(inst.index_of(id.get<int>()));
    }
    sched.slots.push_back(std::move(slot));
  }
  return sched;
}

/// Serialized capacity result.
inline json capacity_to_json(const Instance& inst, const CapacityResult& res) {
  json j;
  j["algorithm"] = res.algorithm;
  j["params"] = {{"power", power_to_json(res.power)},
                 {"mode", to_string(inst.mode)}};
  json ids = json::array();
  for (int v : res.chosen) ids.push_back(inst.links[v].id);
  j["chosen"] = std::move(ids);
  j["total_weight"] = res.total_weight;
  return j;
}

/// Stable FNV-1a 64-bit content hash, as hex. Keyed on the canonical
/// serialization so reports can be joined across runs.
inline std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

inline std::string instance_digest(const Instance& inst) {
  return digest(serialize_instance(inst));
}

}  // namespace sinr
